"""File formats for groups, kernels, equivariant spaces and CLI auxiliary inputs.

JSON documents are the normative form.  A group may be given inline as

    {"kind": "table", "n": 3, "rows": [[0,1,2],[1,2,0],[2,0,1]]}
    {"kind": "perm", "degree": 3, "generators": ["(1 2 3)"]}

or by catalog name (``"C4"`` or ``{"kind": "catalog", "name": "C4"}``).
Permutations are 1-based, in cycle notation (a string) or one-line
notation (a list of images).  Groups also have a line-oriented text form:

    table 3 [name]          perm 3 [name]
    0 1 2                   (1 2 3)
    1 2 0                   2 1 3
    2 0 1

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json

from .band import Band, make_band
from .catalog import by_name, perm_group
from .cohomology import make_gamma_group
from .errors import ParseError, ValidationError
from .groups import FiniteGroup, make_group
from .springer import EquivariantSpace, make_space


# ---------------------------------------------------------------------- helpers


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def _field(doc: dict, name: str, where: str = ""):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", field=where or None)
    if name not in doc:
        raise ParseError("missing field", field=f"{where}.{name}" if where else name)
    return doc[name]


def _int_rows(rows, name: str, width: int | None = None) -> list:
    if not isinstance(rows, list):
        raise ParseError("expected a list of rows", field=name)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise ParseError("row must be a list of integers", field=f"{name}[{i}]")
        if width is not None and len(row) != width:
            raise ParseError(f"row has length {len(row)}, expected {width}", field=f"{name}[{i}]")
        out.append(row)
    return out


def _int_list(values, name: str) -> list:
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ParseError("expected a list of integers", field=name)
    return values


def parse_permutation(perm, degree: int) -> tuple:
    """0-based image tuple from 1-based cycle notation or one-line notation."""
    if isinstance(perm, list):
        if sorted(perm) != list(range(1, degree + 1)):
            raise ValidationError(f"{perm} is not a permutation of 1..{degree}")
        return tuple(v - 1 for v in perm)
    if not isinstance(perm, str):
        raise ValidationError("permutation must be a string or a list")
    img = list(range(degree))
    text = perm.replace(",", " ").strip()
    if text in ("", "()"):
        return tuple(img)
    seen = set()
    for chunk in text.split(")"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not chunk.startswith("("):
            raise ValidationError(f"bad cycle notation {perm!r}")
        try:
            cyc = [int(v) - 1 for v in chunk[1:].split()]
        except ValueError:
            raise ValidationError(f"bad cycle notation {perm!r}") from None
        for v in cyc:
            if not 0 <= v < degree or v in seen:
                raise ValidationError(f"bad point in {perm!r}")
            seen.add(v)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


# ---------------------------------------------------------------------- groups


def group_from_doc(doc, where: str = "group") -> FiniteGroup:
    if isinstance(doc, str):
        return by_name(doc)
    kind = _field(doc, "kind", where)
    name = doc.get("name", "")
    if kind == "catalog":
        return by_name(_field(doc, "name", where))
    if kind == "table":
        n = _field(doc, "n", where)
        rows = _int_rows(_field(doc, "rows", where), f"{where}.rows", n)
        if len(rows) != n:
            raise ParseError(f"{len(rows)} rows, expected {n}", field=f"{where}.rows")
        return make_group(rows, name)
    if kind == "perm":
        degree = _field(doc, "degree", where)
        gens = _field(doc, "generators", where)
        if not isinstance(gens, list):
            raise ParseError("expected a list", field=f"{where}.generators")
        perms = []
        for i, g in enumerate(gens):
            try:
                perms.append(parse_permutation(g, degree))
            except ValidationError as exc:
                raise ParseError(str(exc), field=f"{where}.generators[{i}]") from None
        return perm_group(degree, perms, name)
    raise ParseError(f"unknown group kind {kind!r}", field=f"{where}.kind")


def parse_group_text(text: str) -> FiniteGroup:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty group file", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) < 2 or parts[0] not in ("table", "perm") or not parts[1].isdigit():
        raise ParseError("header must be 'table N [name]' or 'perm DEGREE [name]'", line=lineno)
    size = int(parts[1])
    name = " ".join(parts[2:])
    body = lines[1:]
    if parts[0] == "table":
        rows = []
        for k, (i, ln) in enumerate(body):
            try:
                row = [int(v) for v in ln.split()]
            except ValueError:
                raise ParseError("non-integer entry", line=i, field=f"rows[{k}]") from None
            if len(row) != size:
                raise ParseError(f"row has length {len(row)}, expected {size}", line=i, field=f"rows[{k}]")
            rows.append(row)
        if len(rows) != size:
            raise ParseError(f"{len(rows)} rows, expected {size}", line=lineno)
        return make_group(rows, name)
    perms = []
    for i, ln in body:
        try:
            perm = ln if ln.startswith("(") else [int(v) for v in ln.split()]
            perms.append(parse_permutation(perm, size))
        except (ValueError, ValidationError) as exc:
            raise ParseError(str(exc), line=i) from None
    return perm_group(size, perms, name)


def parse_group(text: str) -> FiniteGroup:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith('"'):
        return group_from_doc(load_json(text))
    return parse_group_text(text)


def group_to_doc(G: FiniteGroup) -> dict:
    doc = {"kind": "table", "n": G.order, "rows": [list(r) for r in G.mult]}
    if G.name:
        doc["name"] = G.name
    return doc


def group_to_text(G: FiniteGroup) -> str:
    head = f"table {G.order}" + (f" {G.name}" if G.name else "")
    return "\n".join([head] + [" ".join(map(str, r)) for r in G.mult]) + "\n"


# ---------------------------------------------------------------------- kernels


def kernel_from_doc(doc) -> Band:
    gamma = group_from_doc(_field(doc, "gamma"), "gamma")
    kernel = group_from_doc(_field(doc, "kernel"), "kernel")
    section = _int_rows(_field(doc, "section"), "section", kernel.order)
    if len(section) != gamma.order:
        raise ParseError(f"{len(section)} section entries, expected {gamma.order}", field="section")
    return make_band(gamma, kernel, section)


def parse_kernel(text: str) -> Band:
    return kernel_from_doc(load_json(text))


def kernel_to_doc(B: Band) -> dict:
    return {
        "kind": "kernel",
        "gamma": group_to_doc(B.gamma),
        "kernel": group_to_doc(B.kernel),
        "section": [list(f) for f in B.section],
    }


# ---------------------------------------------------------------------- spaces


def space_from_doc(doc) -> EquivariantSpace:
    gamma = group_from_doc(_field(doc, "gamma"), "gamma")
    G = group_from_doc(_field(doc, "group"), "group")
    sigma = _int_rows(_field(doc, "sigma"), "sigma", G.order)
    if len(sigma) != gamma.order:
        raise ParseError(f"{len(sigma)} sigma entries, expected {gamma.order}", field="sigma")
    n = _field(doc, "points")
    ra = _int_rows(_field(doc, "right_action"), "right_action", G.order)
    ga = _int_rows(_field(doc, "gamma_action"), "gamma_action", gamma.order)
    if len(ra) != n:
        raise ParseError(f"{len(ra)} rows, expected {n}", field="right_action")
    if len(ga) != n:
        raise ParseError(f"{len(ga)} rows, expected {n}", field="gamma_action")
    return make_space(make_gamma_group(gamma, G, sigma), ra, ga)


def parse_space(text: str) -> EquivariantSpace:
    return space_from_doc(load_json(text))


def space_to_doc(sp: EquivariantSpace) -> dict:
    return {
        "kind": "space",
        "gamma": group_to_doc(sp.gamma),
        "group": group_to_doc(sp.group.carrier),
        "sigma": [list(a) for a in sp.group.action],
        "points": sp.points,
        "right_action": [list(r) for r in sp.right_action],
        "gamma_action": [list(r) for r in sp.gamma_action],
    }


# ---------------------------------------------------------------------- auxiliary inputs


def one_cochain_from_doc(doc, n: int) -> list:
    """Values ``P_s`` (elements of ``A``) of a ``{"kind": "cocycle1", "values": [...]}`` document."""
    values = _int_list(_field(doc, "values"), "values")
    if any(not 0 <= v < n for v in values):
        raise ParseError("value out of range", field="values")
    return values


def lift_request_from_doc(doc, B: Band) -> dict:
    """``{"kind": "lift", "source", "alpha", "f_prime", "M", optional "f"}``.

    ``M`` lists elements of ``A`` whose images in ``A/Z(A)`` form the subgroup.
    """
    Gb = group_from_doc(_field(doc, "source"), "source")
    alpha = _int_list(_field(doc, "alpha"), "alpha")
    if len(alpha) != Gb.order:
        raise ParseError(f"alpha has {len(alpha)} entries, expected {Gb.order}", field="alpha")
    f_prime = _int_rows(_field(doc, "f_prime"), "f_prime", Gb.order)
    f = _int_rows(doc["f"], "f", B.kernel.order) if "f" in doc else [list(x) for x in B.section]
    M = _int_list(_field(doc, "M"), "M")
    return {"source": Gb, "alpha": alpha, "f_prime": f_prime, "f": f, "M": M}


def load_document(text: str):
    """``(kind, value)`` for any group, kernel or space document."""
    stripped = text.lstrip()
    if not (stripped.startswith("{") or stripped.startswith('"')):
        return "group", parse_group_text(text)
    doc = load_json(text)
    if isinstance(doc, str):
        return "group", by_name(doc)
    kind = _field(doc, "kind")
    if kind in ("table", "perm", "catalog"):
        return "group", group_from_doc(doc)
    if kind == "kernel":
        return "kernel", kernel_from_doc(doc)
    if kind == "space":
        return "space", space_from_doc(doc)
    raise ParseError(f"unknown document kind {kind!r}", field="kind")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"
