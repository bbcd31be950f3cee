"""Finite bands: a group ``A`` with ``kappa: Gamma -> Out(A)``, stored via a section."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

from .cohomology import GammaGroup, GammaModule, make_gamma_group, make_gamma_module
from .errors import BudgetExceeded, NotOuterHomomorphism, ValidationError
from .groups import (
    DEFAULT_CANDIDATE_CAP,
    FiniteGroup,
    Subgroup,
    _bfs_words,
    aut_group,
    center,
    compose,
    derived_subgroup,
    find_isomorphism,
    induced_automorphism,
    inner_automorphism,
    invert,
    is_hom_map,
    quotient,
    subgroup_as_group,
)


@dataclass(frozen=True, eq=False)
class Band:
    gamma: FiniteGroup
    kernel: FiniteGroup
    section: tuple

    @cached_property
    def key(self):
        return (self.gamma.mult, self.kernel.mult, self.section)

    def __eq__(self, other):
        return isinstance(other, Band) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def aut(self):
        return aut_group(self.kernel)

    @cached_property
    def center(self) -> Subgroup:
        return center(self.kernel)

    @cached_property
    def kappa(self) -> tuple:
        """Outer class index of each section value."""
        return tuple(self.aut.outer_class(f) for f in self.section)

    @cached_property
    def inner_lists(self) -> tuple:
        """Per element ``s``: the distinct automorphisms ``int(a) o f0_s``, ordered by least ``a``."""
        A = self.kernel
        inn = []
        seen = set()
        for a in range(A.order):
            phi = inner_automorphism(A, a)
            if phi not in seen:
                seen.add(phi)
                inn.append(phi)
        return tuple(tuple(compose(phi, f) for phi in inn) for f in self.section)

    def inner_witness(self, phi) -> int:
        """Least ``a`` with ``int(a) = phi``; raises if ``phi`` is not inner."""
        w = self.aut.inner_witness.get(tuple(phi))
        if w is None:
            raise ValidationError("automorphism is not inner")
        return w

    def lifts_kappa(self, f) -> bool:
        return len(f) == self.gamma.order and all(
            tuple(fs) in self.aut.index and self.aut.outer_class(tuple(fs)) == k for fs, k in zip(f, self.kappa)
        )


def make_band(gamma: FiniteGroup, kernel: FiniteGroup, section) -> Band:
    section = tuple(tuple(int(v) for v in f) for f in section)
    if len(section) != gamma.order:
        raise NotOuterHomomorphism(f"section has {len(section)} entries, expected {gamma.order}")
    if section[0] != kernel.identity_aut:
        raise NotOuterHomomorphism("section must send the identity to the identity automorphism")
    AG = aut_group(kernel)
    for s, f in enumerate(section):
        if f not in AG.index:
            raise NotOuterHomomorphism(f"section value at {s} is not an automorphism")
    m = gamma.mult
    for s in range(gamma.order):
        for t in range(gamma.order):
            defect = compose(compose(section[s], section[t]), invert(section[m[s][t]]))
            if not AG.is_inner(defect):
                raise NotOuterHomomorphism(f"f_{s} f_{t} f_{m[s][t]}^-1 is not inner at (s,t)=({s},{t})")
    return Band(gamma, kernel, section)


def band_from_outer(gamma: FiniteGroup, kernel: FiniteGroup, kappa) -> Band:
    """Band with section the least automorphism in each outer class of ``kappa``."""
    AG = aut_group(kernel)
    return make_band(gamma, kernel, [AG.out_representative(k) for k in kappa])


def kappa_is_homomorphism(B: Band) -> bool:
    out = B.aut.out
    m = B.gamma.mult
    k = B.kappa
    return all(out.mult[k[s]][k[t]] == k[m[s][t]] for s in range(B.gamma.order) for t in range(B.gamma.order))


def lifts_of_kappa(B: Band):
    """Every section lifting ``kappa`` with ``f_1 = id``."""
    choices = B.inner_lists
    for combo in product(*choices[1:]):
        yield (choices[0][0],) + combo


def count_lifts(B: Band) -> int:
    n = 1
    for c in B.inner_lists[1:]:
        n *= len(c)
    return n


def _check_center_stable(B: Band, Z: Subgroup):
    for f in B.section:
        if any(f[z] not in Z for z in Z.members):
            raise ValidationError("section does not preserve the center")


@lru_cache(maxsize=4096)
def center_module(B: Band) -> GammaModule:
    Z = B.center
    H, _ = subgroup_as_group(Z, f"Z({B.kernel.name})" if B.kernel.name else "")
    pos = {x: i for i, x in enumerate(Z.members)}
    action = [tuple(pos[f[x]] for x in Z.members) for f in B.section]
    return make_gamma_module(B.gamma, H, action)


def center_embedding(B: Band) -> tuple:
    """Element of ``A`` for each element of the center module carrier."""
    return B.center.members


@lru_cache(maxsize=4096)
def abelianization(B: Band) -> tuple:
    """(module on A/[A,A], projection A -> A/[A,A])"""
    Q, proj = quotient(B.kernel, derived_subgroup(B.kernel))
    action = [induced_automorphism(proj, f) for f in B.section]
    return make_gamma_module(B.gamma, Q, action), proj


def abelianization_module(B: Band) -> GammaModule:
    return abelianization(B)[0]


def quotient_band(B: Band, N: Subgroup) -> tuple:
    """Band on ``A/N`` for a characteristic-enough ``N``; returns (band, projection)."""
    for f in B.section:
        if any(f[x] not in N for x in N.members):
            raise ValidationError("section does not preserve the subgroup")
    Q, proj = quotient(B.kernel, N)
    return make_band(B.gamma, Q, [induced_automorphism(proj, f) for f in B.section]), proj


def homomorphic_lifts(B: Band, cap: int = DEFAULT_CANDIDATE_CAP) -> list:
    """All lifts of ``kappa`` that are homomorphisms ``Gamma -> Aut(A)``, sorted."""
    G = B.gamma
    if G.order == 1:
        return [B.section]
    gens = G.generators
    tree = _bfs_words(G, gens)
    m = G.mult
    allowed = [set(c) for c in B.inner_lists]
    out = []
    count = 0
    for imgs in product(*[B.inner_lists[g] for g in gens]):
        count += 1
        if count > cap:
            raise BudgetExceeded("homomorphic lift search exceeded its cap")
        f = [None] * G.order
        f[0] = B.kernel.identity_aut
        for y, x, i in tree[1:]:
            f[y] = compose(f[x], imgs[i])
        if any(f[s] not in allowed[s] for s in range(G.order)):
            continue
        if all(f[m[x][g]] == compose(f[x], imgs[i]) for x in range(G.order) for i, g in enumerate(gens)):
            out.append(tuple(f))
    return sorted(set(out))


def is_representable(B: Band):
    """Least homomorphic lift of ``kappa``, or None."""
    lifts = homomorphic_lifts(B)
    return lifts[0] if lifts else None


def as_gamma_group(B: Band, f) -> GammaGroup:
    """The Gamma-group ``(A, f)`` for a homomorphic lift ``f``."""
    return make_gamma_group(B.gamma, B.kernel, f)


@dataclass(frozen=True)
class BandIso:
    alpha: tuple
    source: Band = field(repr=False, compare=False)
    target: Band = field(repr=False, compare=False)


def is_band_iso(B1: Band, B2: Band, alpha) -> bool:
    alpha = tuple(alpha)
    if B1.gamma != B2.gamma or len(alpha) != B1.kernel.order or not is_hom_map(B1.kernel, B2.kernel, alpha):
        return False
    if len(set(alpha)) != B2.kernel.order:
        return False
    ainv = invert(alpha)
    AG = B2.aut
    for s in range(B1.gamma.order):
        conj = compose(compose(alpha, B1.section[s]), ainv)
        if AG.outer_class(conj) != B2.kappa[s]:
            return False
    return True


def band_isomorphic(B1: Band, B2: Band, cap: int = DEFAULT_CANDIDATE_CAP):
    if B1.gamma != B2.gamma:
        raise ValidationError("bands over different Gamma")
    if B1.kernel.order != B2.kernel.order:
        return None
    alpha0 = find_isomorphism(B1.kernel, B2.kernel, cap)
    if alpha0 is None:
        return None
    cands = sorted(compose(phi, alpha0) for phi in B2.aut.elements)
    for alpha in cands:
        if is_band_iso(B1, B2, alpha):
            return BandIso(alpha, B1, B2)
    return None


def transport_band(B: Band, target: FiniteGroup, alpha) -> Band:
    """The band on ``target`` obtained through an isomorphism ``alpha: A -> target``."""
    alpha = tuple(alpha)
    ainv = invert(alpha)
    return make_band(B.gamma, target, [compose(compose(alpha, f), ainv) for f in B.section])
