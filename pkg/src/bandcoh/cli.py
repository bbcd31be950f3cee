"""Command-line interface.

Every command prints one JSON document (``sweep`` prints CSV by default).
Exit status: 0 on success, 1 on validation or parse errors, 2 when a search
budget is exceeded.
"""
from __future__ import annotations

import argparse
import sys

from . import extensions as ext_mod
from . import h2 as h2_mod
from .band import Band, abelianization_module, as_gamma_group, homomorphic_lifts, kappa_is_homomorphism
from .cohomology import h1_nonabelian, h_n, lift_twist, quotient_gamma_group, tau_translation, twisting_report
from .errors import BandError, BudgetExceeded, ConditionFailed, NotHomomorphism, ParseError, ValidationError
from .formats import dumps, lift_request_from_doc, load_document, one_cochain_from_doc, parse_kernel, parse_space, load_json
from .groups import center, make_hom, quotient
from .springer import fixed_points, has_equivariant_lift, springer_class, springer_cocycle
from .sweep import render_csv, render_json, run_sweep

BUDGETS = {
    "cocycle_cap": h2_mod.COCYCLE_CAP,
    "partial_cap": h2_mod.PARTIAL_CAP,
    "witness_cap": h2_mod.WITNESS_CAP,
    "oracle_lift_cap": ext_mod.LIFT_CAP,
}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _kernel(path: str) -> Band:
    return parse_kernel(_read(path))


def _table(g, q: int) -> list:
    return [list(g[s * q : (s + 1) * q]) for s in range(q)]


def _doc(command: str, **body) -> dict:
    return {"command": command, **body, "budgets": BUDGETS}


# ---------------------------------------------------------------------- commands


def cmd_validate(args) -> dict:
    kind, value = load_document(_read(args.file))
    if kind == "group":
        return _doc("validate", kind=kind, ok=True, order=value.order, name=value.name, abelian=value.is_abelian)
    if kind == "kernel":
        kappa = value.kappa
        return _doc(
            "validate",
            kind=kind,
            ok=True,
            gamma_order=value.gamma.order,
            kernel_order=value.kernel.order,
            kappa=list(kappa),
            kappa_order=len(set(kappa)),
            kappa_is_homomorphism=kappa_is_homomorphism(value),
        )
    data = springer_cocycle(value, 0)
    return _doc(
        "validate",
        kind=kind,
        ok=True,
        points=value.points,
        stabilizer_order=data.stabilizer.order,
        fixed_points=fixed_points(value),
    )


def cmd_h2(args) -> dict:
    B = _kernel(args.kernel)
    H = h2_mod.h2_set(B)
    q = B.gamma.order
    body = {
        "classes": H.order,
        "neutral": len(H.neutral_indices),
        "f": [list(x) for x in H.f_min],
        "cocycle_count": H.cocycle_count,
        "representatives": [
            {"index": c.index, "g": _table(c.representative.g, q), "neutral": c.neutral} for c in H.classes
        ],
    }
    if args.list_cocycles:
        rows = h2_mod.cocycles_with_f(B, H.f_min)
        body["cocycles"] = [
            {"g": _table([int(v) for v in r], q), "class": H.class_index(h2_mod.Cocycle(B, H.f_min, tuple(int(v) for v in r)))}
            for r in rows
        ]
    return _doc("h2", **body)


def cmd_neutral(args) -> dict:
    B = _kernel(args.kernel)
    H = h2_mod.h2_set(B)
    q = B.gamma.order
    lifts = [
        {"f": [list(x) for x in f], "class": H.class_index(h2_mod.Cocycle(B, f, (0,) * (q * q)))}
        for f in homomorphic_lifts(B)
    ]
    return _doc("neutral", classes=H.order, neutral=sorted(H.neutral_indices), homomorphic_lifts=lifts)


def cmd_obstruction(args) -> dict:
    B = _kernel(args.kernel)
    ob = h2_mod.obstruction(B)
    return _doc(
        "obstruction",
        zero=ob.is_zero,
        h3_order=ob.cohomology.order,
        class_key=[int(v) for v in ob.key],
        cochain=list(ob.cochain.values),
        h2_nonempty=h2_mod.h2_set(B).order > 0,
    )


def cmd_abelianize(args) -> dict:
    B = _kernel(args.kernel)
    Hab = h_n(abelianization_module(B), 2)
    images = [{"class": c.index, "ab2": h2_mod.ab2(B, c).index} for c in h2_mod.h2_classes(B)]
    return _doc("abelianize", abelianization_order=Hab.module.carrier.order, h2_abelian=Hab.order, images=images)


def cmd_twist(args) -> dict:
    B = _kernel(args.kernel)
    try:
        M = as_gamma_group(B, B.section)
    except NotHomomorphism:
        raise ValidationError("twist needs a kernel whose section is a homomorphism") from None
    Z = center(B.kernel)
    Q, proj = quotient_gamma_group(M, Z)
    values = one_cochain_from_doc(load_json(_read(args.cocycle)), B.kernel.order)
    if len(values) != B.gamma.order:
        raise ParseError(f"{len(values)} values, expected {B.gamma.order}", field="values")
    P = tuple(proj.map[v] for v in values)
    report = twisting_report(M, Z, P)
    MP, lift = lift_twist(M, Z, P)
    H1Q = h1_nonabelian(Q)
    tau = [tau_translation(M, Z, P, rep).index for rep in H1Q.representatives]
    return _doc(
        "twist",
        cocycle_in_quotient=list(P),
        lift=list(lift),
        twisted_action=[list(a) for a in MP.action],
        h1_quotient=H1Q.order,
        tau=tau,
        report=report,
    )


def cmd_lift(args) -> dict:
    B = _kernel(args.kernel)
    req = lift_request_from_doc(load_json(_read(args.along)), B)
    alpha = make_hom(req["source"], B.kernel, req["alpha"])
    _, projA = quotient(B.kernel, center(B.kernel))
    M = sorted({projA.map[x] for x in req["M"]})
    try:
        res = h2_mod.lift_band_along(alpha, B, req["f"], req["f_prime"], M)
    except ConditionFailed as exc:
        return _doc("lift", ok=False, condition=exc.condition, message=str(exc))
    return _doc(
        "lift",
        ok=True,
        section=[list(x) for x in res.section],
        lift_on_target=[list(x) for x in res.lift_on_target],
        j=list(res.j),
    )


def cmd_springer(args) -> dict:
    sp = parse_space(_read(args.space))
    data = springer_cocycle(sp, 0)
    sc = springer_class(sp)
    lift = has_equivariant_lift(sp)
    q = sp.gamma.order
    return _doc(
        "springer",
        stabilizer=list(data.stabilizer.members),
        transporter=list(data.transporter),
        section=[list(x) for x in data.band.section],
        h=_table(data.cocycle.g, q),
        h2_classes=h2_mod.h2_set(sc.band).order,
        class_index=sc.h2_class.index,
        neutral=sc.neutral,
        base_point_classes=list(sc.point_classes),
        base_point_independent=sc.base_point_independent,
        fixed_points=fixed_points(sp),
        equivariant_lift=None if lift is None else list(lift),
    )


def cmd_extensions(args) -> dict:
    B = _kernel(args.kernel)
    classes = ext_mod.enumerate_extensions(B.gamma, B.kernel, B.section)
    H = h2_mod.h2_set(B)
    q = B.gamma.order
    out = []
    for c in classes.classes:
        cocycle = h2_mod.make_cocycle(B, c.f, c.g)
        out.append(
            {
                "index": c.index,
                "f": [list(x) for x in c.f],
                "g": _table(c.g, q),
                "splits": c.splits,
                "splitting": None if c.splitting is None else list(c.splitting),
                "h2_class": H.class_index(cocycle),
            }
        )
    return _doc("extensions", classes=len(classes), laws_examined=classes.law_count, extensions=out)


def cmd_sweep(args):
    rows = run_sweep(args.gamma_max, args.kernel_max, args.jobs)
    if args.report == "json":
        return render_json(rows, args.gamma_max, args.kernel_max, args.timing)
    return render_csv(rows, args.timing)


# ---------------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bandcoh", description="Nonabelian H^2 of finite bands.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a group, kernel or space file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("h2", help="classes of the band's H^2")
    s.add_argument("kernel")
    s.add_argument("--list-cocycles", action="store_true", help="also list every cocycle with the minimal f")
    s.set_defaults(func=cmd_h2)

    for name, func, text in (
        ("neutral", cmd_neutral, "neutral classes and homomorphic lifts"),
        ("obstruction", cmd_obstruction, "obstruction class in H^3(Gamma, Z)"),
        ("abelianize", cmd_abelianize, "image of each class in H^2(Gamma, A/[A,A])"),
        ("extensions", cmd_extensions, "extension classes found by direct enumeration"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("kernel")
        s.set_defaults(func=func)

    s = sub.add_parser("twist", help="twist H^1(Gamma, A/Z) by a cocycle")
    s.add_argument("kernel")
    s.add_argument("--cocycle", required=True)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("lift", help="lift the band along a map Gb -> A")
    s.add_argument("kernel")
    s.add_argument("--along", required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("springer", help="Springer class of an equivariant space")
    s.add_argument("space")
    s.set_defaults(func=cmd_springer)

    s = sub.add_parser("sweep", help="classify every small kernel")
    s.add_argument("--gamma-max", type=int, default=4)
    s.add_argument("--kernel-max", type=int, default=8)
    s.add_argument("--report", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except BudgetExceeded as exc:
        sys.stdout.write(dumps({"command": args.command, "error": exc.code, "message": str(exc), "budgets": BUDGETS}))
        return 2
    except BandError as exc:
        body = {"command": args.command, "error": exc.code, "message": str(exc)}
        if isinstance(exc, ParseError):
            body["line"], body["field"] = exc.line, exc.field
        sys.stdout.write(dumps(body))
        return 1
    sys.stdout.write(result if isinstance(result, str) else dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
