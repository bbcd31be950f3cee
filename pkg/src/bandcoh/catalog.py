"""Standard small groups and permutation-group ingestion."""
from __future__ import annotations

from itertools import permutations

from .errors import BudgetExceeded, ValidationError
from .groups import FiniteGroup, direct_product, make_group, semidirect_product

PERM_CLOSURE_CAP = 5000


def perm_group(degree: int, generators, name: str = "", cap: int = PERM_CLOSURE_CAP) -> FiniteGroup:
    """Group generated by permutations of ``range(degree)`` (image tuples).

    Elements are labelled in lexicographic order of their image tuples, so
    the identity is element 0.
    """
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(ident):
            raise ValidationError(f"{g} is not a permutation of degree {degree}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise BudgetExceeded(f"permutation group exceeds {cap} elements")
        frontier = nxt
    elems = sorted(seen)
    pos = {p: i for i, p in enumerate(elems)}
    # (p*q)(i) = p(q(i)): apply q first
    mult = [[pos[tuple(p[q[i]] for i in range(degree))] for q in elems] for p in elems]
    return make_group(mult, name)


def cyclic(n: int) -> FiniteGroup:
    return make_group([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    G = cyclic(p)
    for _ in range(k - 1):
        G = direct_product(G, cyclic(p))
    return FiniteGroup(G.mult, G.inv, f"C{p}^{k}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, as C_n x| C_2 with inversion."""
    C = cyclic(n)
    inv = tuple((-x) % n for x in range(n))
    G = semidirect_product(C, cyclic(2), [C.identity_aut, inv])
    return FiniteGroup(G.mult, G.inv, f"D{n}")


def quaternion() -> FiniteGroup:
    # elements (sign, unit) with units 1,i,j,k encoded 0..3; index = 4*sign_bit + unit
    table = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    mult = []
    for a in range(8):
        row = []
        for b in range(8):
            sgn, u = table[(a % 4, b % 4)]
            sgn ^= (a // 4) ^ (b // 4)
            row.append(4 * sgn + u)
        mult.append(row)
    return make_group(mult, "Q8")


def dicyclic3() -> FiniteGroup:
    """C3 x| C4 with the generator of C4 acting by inversion (order 12)."""
    C3 = cyclic(3)
    inv = (0, 2, 1)
    G = semidirect_product(C3, cyclic(4), [C3.identity_aut, inv, C3.identity_aut, inv])
    return FiniteGroup(G.mult, G.inv, "Dic3")


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return make_group([[0]], "S1")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return perm_group(n, gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    elems = [p for p in permutations(range(n)) if _parity(p) == 0]
    gens = [p for p in elems if p != tuple(range(n))]
    return perm_group(n, gens, f"A{n}")


def _parity(p) -> int:
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _named(G: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(G.mult, G.inv, name)


_BUILDERS = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "V4": lambda: _named(elementary_abelian(2, 2), "V4"),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "S3": lambda: _named(dihedral(3), "S3"),
    "C7": lambda: cyclic(7),
    "C8": lambda: cyclic(8),
    "C4xC2": lambda: _named(direct_product(cyclic(4), cyclic(2)), "C4xC2"),
    "C2^3": lambda: elementary_abelian(2, 3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "C9": lambda: cyclic(9),
    "C3xC3": lambda: _named(elementary_abelian(3, 2), "C3xC3"),
    "C10": lambda: cyclic(10),
    "D5": lambda: dihedral(5),
    "C11": lambda: cyclic(11),
    "C12": lambda: cyclic(12),
    "C6xC2": lambda: _named(direct_product(cyclic(6), cyclic(2)), "C6xC2"),
    "A4": lambda: alternating(4),
    "D6": lambda: dihedral(6),
    "Dic3": dicyclic3,
    "C13": lambda: cyclic(13),
    "C14": lambda: cyclic(14),
    "D7": lambda: dihedral(7),
    "C15": lambda: cyclic(15),
}

#: Groups of order <= 15, one per isomorphism class, ordered by (order, listing).
SMALL_GROUP_IDS = tuple(_BUILDERS)
MAX_CATALOG_ORDER = 15

_CACHE: dict = {}


def by_name(name: str) -> FiniteGroup:
    extra = {"A5": lambda: alternating(5), "S4": lambda: symmetric(4), "C2^4": lambda: elementary_abelian(2, 4)}
    builder = _BUILDERS.get(name) or extra.get(name)
    if builder is None:
        if name.startswith("C") and name[1:].isdigit():
            builder = lambda: cyclic(int(name[1:]))  # noqa: E731
        else:
            raise ValidationError(f"unknown catalog group {name!r}")
    if name not in _CACHE:
        _CACHE[name] = builder()
    return _CACHE[name]


def small_groups(max_order: int) -> list:
    """``[(id, group)]`` for every isomorphism class of order <= max_order."""
    if max_order > MAX_CATALOG_ORDER:
        raise BudgetExceeded(f"catalog covers orders <= {MAX_CATALOG_ORDER}")
    out = []
    for name in SMALL_GROUP_IDS:
        G = by_name(name)
        if G.order <= max_order:
            out.append((name, G))
    return out
