"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI reports.
"""


class BandError(Exception):
    code = "error"


class ValidationError(BandError):
    code = "validation"


class NotAssociative(ValidationError):
    code = "not_associative"


class NoIdentity(ValidationError):
    code = "no_identity"


class NoInverse(ValidationError):
    code = "no_inverse"


class NotNormal(ValidationError):
    code = "not_normal"


class NotHomomorphism(ValidationError):
    code = "not_homomorphism"


class NotOuterHomomorphism(ValidationError):
    code = "not_outer_homomorphism"


class NotCocycle(ValidationError):
    code = "not_cocycle"


class NotSection(ValidationError):
    code = "not_section"


class HypothesisViolated(ValidationError):
    code = "hypothesis_violated"


class ConditionFailed(ValidationError):
    code = "condition_failed"

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(f"condition ({condition}) failed: {message}" if message else f"condition ({condition}) failed")


class ParseError(ValidationError):
    code = "parse_error"

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class BudgetExceeded(BandError):
    code = "budget_exceeded"
