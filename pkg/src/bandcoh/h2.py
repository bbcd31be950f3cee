"""Nonabelian second cohomology of a finite band.

A cocycle is a pair ``(f, g)``: ``f`` lifts ``kappa`` to automorphisms and
``g: Gamma x Gamma -> A`` satisfies

    f_s o f_t = int(g_{s,t}) o f_{st}
    f_s(g_{t,u}) g_{s,tu} = g_{s,t} g_{st,u}

``g`` is stored flat: ``g[s * |Gamma| + t]``.  Two cocycles are equivalent
when some ``h: Gamma -> A`` carries one to the other via

    f'_s = int(h_s) o f_s,   g'_{s,t} = h_s f_s(h_t) g_{s,t} h_{st}^-1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd

import numpy as np

from .band import (
    Band,
    abelianization,
    center_module,
    homomorphic_lifts,
    is_representable,
    make_band,
    quotient_band,
)
from .cohomology import (
    AbelianClass,
    AbelianCochain,
    coprime_average_primitive,
    cochain_from_function,
    h_n,
    h1_nonabelian,
    make_gamma_group,
)
from .errors import BudgetExceeded, ConditionFailed, HypothesisViolated, NotCocycle, ValidationError
from .groups import (
    FiniteGroup,
    GroupHom,
    aut_group,
    center,
    compose,
    coset_representatives,
    induced_automorphism,
    inner_automorphism,
    invert,
    homomorphisms,
    is_prime,
    make_subgroup,
    nilpotency_data,
    quotient,
    subgroup_as_group,
)

COCYCLE_CAP = 10**6
PARTIAL_CAP = 5 * 10**6
WITNESS_CAP = 10**7


@dataclass(frozen=True)
class Cocycle:
    band: Band = field(repr=False, compare=False)
    f: tuple
    g: tuple

    def __hash__(self):
        return hash((self.f, self.g))

    def g_at(self, s: int, t: int) -> int:
        return self.g[s * self.band.gamma.order + t]

    def as_key(self) -> tuple:
        return (self.f, self.g)


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_cocycle(B: Band, f, g) -> CocycleReport:
    """Check both cocycle identities and normalization; report the first failure."""
    G, A = B.gamma, B.kernel
    q = G.order
    f = tuple(tuple(x) for x in f)
    g = tuple(g)
    if len(f) != q or len(g) != q * q:
        return CocycleReport(False, "wrong number of entries")
    if not B.lifts_kappa(f):
        bad = next(s for s in range(q) if tuple(f[s]) not in B.aut.index or B.aut.outer_class(f[s]) != B.kappa[s])
        return CocycleReport(False, f"f_{bad} does not lift kappa")
    if f[0] != A.identity_aut:
        return CocycleReport(False, "f_1 is not the identity")
    for s in range(q):
        if g[s] != 0 or g[s * q] != 0:
            return CocycleReport(False, f"g not normalized at {s}")
    m, am = G.mult, A.mult
    for s in range(q):
        for t in range(q):
            lhs = compose(f[s], f[t])
            rhs = compose(inner_automorphism(A, g[s * q + t]), f[m[s][t]])
            if lhs != rhs:
                return CocycleReport(False, f"f_s f_t != int(g_st) f_st at (s,t)=({s},{t})")
    for s in range(q):
        fs = f[s]
        for t in range(q):
            st = m[s][t]
            for u in range(q):
                lhs = am[fs[g[t * q + u]]][g[s * q + m[t][u]]]
                rhs = am[g[s * q + t]][g[st * q + u]]
                if lhs != rhs:
                    return CocycleReport(False, f"g-identity fails at (s,t,u)=({s},{t},{u})")
    return CocycleReport(True)


def make_cocycle(B: Band, f, g) -> Cocycle:
    rep = is_cocycle(B, f, g)
    if not rep:
        raise NotCocycle(rep.reason)
    return Cocycle(B, tuple(tuple(x) for x in f), tuple(int(x) for x in g))


def transform(c: Cocycle, h) -> Cocycle:
    """Apply the equivalence given by ``h: Gamma -> A`` (not necessarily normalized)."""
    B = c.band
    A, G = B.kernel, B.gamma
    q = G.order
    am, ai = A.mult, A.inv
    f = tuple(compose(inner_automorphism(A, h[s]), c.f[s]) for s in range(q))
    g = []
    for s in range(q):
        for t in range(q):
            g.append(am[am[am[h[s]][c.f[s][h[t]]]][c.g[s * q + t]]][ai[h[G.mult[s][t]]]])
    return Cocycle(B, f, tuple(g))


def normalize(B: Band, f, g) -> tuple:
    """Normalized cocycle equivalent to a possibly unnormalized one; returns (cocycle, h)."""
    A, q = B.kernel, B.gamma.order
    f = tuple(tuple(x) for x in f)
    g = tuple(g)
    h = [0] * q
    h[0] = A.inv[g[0]]
    raw = Cocycle(B, f, g)
    c = transform(raw, h)
    rep = is_cocycle(B, c.f, c.g)
    if not rep:
        raise NotCocycle(rep.reason)
    return c, tuple(h)


def equivalent(B: Band, c1: Cocycle, c2: Cocycle, cap: int = WITNESS_CAP):
    """Least normalized ``h`` carrying ``c1`` to ``c2``, or None."""
    A, q = B.kernel, B.gamma.order
    Z = B.center.members
    cands = []
    for s in range(1, q):
        target = compose(c2.f[s], invert(c1.f[s]))
        w = B.aut.inner_witness.get(target)
        if w is None:
            return None
        cands.append(sorted(A.mult[w][z] for z in Z))
    total = 1
    for cs in cands:
        total *= len(cs)
    if total > cap:
        raise BudgetExceeded(f"equivalence search would try {total} candidates")
    for combo in product(*cands):
        h = (0,) + combo
        if transform(c1, h).g == c2.g:
            return h
    return None


# ---------------------------------------------------------------------- enumeration


def _defect_witnesses(B: Band, f) -> np.ndarray:
    """Least ``a`` with ``int(a) = f_s f_t f_st^-1``, flat over (s,t)."""
    G = B.gamma
    q = G.order
    out = np.zeros(q * q, dtype=np.int64)
    for s in range(q):
        for t in range(q):
            d = compose(compose(f[s], f[t]), invert(f[G.mult[s][t]]))
            out[s * q + t] = B.inner_witness(d)
    return out


def cocycles_with_f(B: Band, f, cap: int = COCYCLE_CAP) -> np.ndarray:
    """All normalized ``g`` making ``(f, g)`` a cocycle, as rows sorted lexicographically."""
    G, A = B.gamma, B.kernel
    q = G.order
    T = A.table
    Z = np.array(B.center.members, dtype=np.int64)
    g0 = _defect_witnesses(B, f)
    if q == 1:
        return np.zeros((1, 1), dtype=np.int64)
    fmaps = np.array(f, dtype=np.int64)
    m = G.mult
    pairs = [(s, t) for s in range(1, q) for t in range(1, q)]
    step_of = {p: k for k, p in enumerate(pairs)}
    checks = [[] for _ in pairs]
    for s, t, u in product(range(1, q), repeat=3):
        involved = [p for p in ((t, u), (s, m[t][u]), (s, t), (m[s][t], u)) if 0 not in p]
        checks[max(step_of[p] for p in involved)].append((s, t, u))
    rows = np.zeros((1, q * q), dtype=np.int64)
    for k, (s, t) in enumerate(pairs):
        col = s * q + t
        choices = T[g0[col], Z]
        n = len(rows)
        rows = np.repeat(rows, len(choices), axis=0)
        rows[:, col] = np.tile(choices, n)
        for s1, t1, u1 in checks[k]:
            lhs = T[fmaps[s1][rows[:, t1 * q + u1]], rows[:, s1 * q + m[t1][u1]]]
            rhs = T[rows[:, s1 * q + t1], rows[:, m[s1][t1] * q + u1]]
            rows = rows[lhs == rhs]
        if len(rows) > PARTIAL_CAP:
            raise BudgetExceeded(f"cocycle search exceeded {PARTIAL_CAP} partial solutions")
    if len(rows) > cap:
        raise BudgetExceeded(f"more than {cap} cocycles")
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def central_coboundaries(B: Band, f) -> np.ndarray:
    """``(s,t) -> h_s f_s(h_t) h_st^-1`` for every normalized ``h: Gamma -> Z(A)``."""
    G, A = B.gamma, B.kernel
    q = G.order
    T, I = A.table, A.inv_array
    Z = np.array(B.center.members, dtype=np.int64)
    hs = np.array(list(product(Z, repeat=q - 1)), dtype=np.int64).reshape(len(Z) ** (q - 1), q - 1)
    hs = np.concatenate([np.zeros((len(hs), 1), dtype=np.int64), hs], axis=1)
    fmaps = np.array(f, dtype=np.int64)
    out = np.zeros((len(hs), q * q), dtype=np.int64)
    for s in range(q):
        for t in range(q):
            out[:, s * q + t] = T[T[hs[:, s], fmaps[s][hs[:, t]]], I[hs[:, G.mult[s][t]]]]
    return out


@dataclass(frozen=True)
class H2Class:
    index: int
    representative: Cocycle
    neutral: bool


class H2:
    """All classes of normalized cocycles of a band."""

    def __init__(self, B: Band):
        self.band = B
        q = B.gamma.order
        self.f_min = tuple(min(B.inner_lists[s]) for s in range(q))
        gs = cocycles_with_f(B, self.f_min)
        self.cocycle_count = len(gs)
        dh = central_coboundaries(B, self.f_min)
        T = B.kernel.table
        lookup: dict = {}
        reps = []
        for row in gs:
            key = row.tobytes()
            if key in lookup:
                continue
            k = len(reps)
            reps.append(tuple(int(v) for v in row))
            orbit = T[dh, row[None, :]]
            for o in orbit:
                lookup[o.tobytes()] = k
        self._lookup = lookup
        self._reps = reps

    @property
    def order(self) -> int:
        return len(self._reps)

    def __len__(self):
        return len(self._reps)

    @cached_property
    def neutral_indices(self) -> frozenset:
        out = set()
        q = self.band.gamma.order
        for f in homomorphic_lifts(self.band):
            out.add(self.class_index(Cocycle(self.band, f, (0,) * (q * q))))
        return frozenset(out)

    @cached_property
    def classes(self) -> list:
        neutral = self.neutral_indices
        return [H2Class(i, Cocycle(self.band, self.f_min, g), i in neutral) for i, g in enumerate(self._reps)]

    def central_orbit(self, index: int, zs: np.ndarray) -> list:
        """Class indices of ``[f_min, z g]`` for each row ``z`` (values in ``A``)."""
        g = np.array(self._reps[index], dtype=np.int64)
        rows = self.band.kernel.table[zs, g[None, :]]
        return [self._lookup[r.tobytes()] for r in rows]

    def to_f_min(self, c: Cocycle) -> tuple:
        """Equivalent cocycle with ``f = f_min``; returns (cocycle, h)."""
        B = self.band
        q = B.gamma.order
        h = [0] * q
        for s in range(1, q):
            h[s] = B.inner_witness(compose(self.f_min[s], invert(c.f[s])))
        return transform(c, h), tuple(h)

    def class_index(self, c: Cocycle) -> int:
        rep = is_cocycle(self.band, c.f, c.g)
        if not rep:
            raise NotCocycle(rep.reason)
        d, _ = self.to_f_min(c)
        return self._lookup[np.array(d.g, dtype=np.int64).tobytes()]

    def class_of(self, c: Cocycle) -> H2Class:
        return self.classes[self.class_index(c)]


_H2_CACHE: dict = {}


def h2_set(B: Band) -> H2:
    H = _H2_CACHE.get(B.key)
    if H is None:
        H = H2(B)
        _H2_CACHE[B.key] = H
    return H


def h2_classes(B: Band) -> list:
    return h2_set(B).classes


def neutral_classes(B: Band) -> list:
    return [c for c in h2_classes(B) if c.neutral]


# ---------------------------------------------------------------------- obstruction


def defect_cochain(B: Band, f=None, g=None) -> tuple:
    """``(f, g)`` with ``f_s f_t = int(g_st) f_st``; defaults to the section and least witnesses."""
    if f is None:
        f = B.section
    f = tuple(tuple(x) for x in f)
    if g is None:
        g = tuple(int(v) for v in _defect_witnesses(B, f))
    return f, tuple(g)


@dataclass(frozen=True)
class ObstructionClass:
    cohomology: object = field(repr=False, compare=False)
    key: tuple
    cochain: AbelianCochain = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return not any(self.key)

    @property
    def index(self) -> int:
        return self.cohomology._classes[1][self.key]


def obstruction(B: Band, f=None, g=None) -> ObstructionClass:
    """The class ``-[dg]`` in ``H^3(Gamma, Z(A))``."""
    f, g = defect_cochain(B, f, g)
    G, A = B.gamma, B.kernel
    q = G.order
    m, am, ai = G.mult, A.mult, A.inv
    for s in range(q):
        for t in range(q):
            if compose(f[s], f[t]) != compose(inner_automorphism(A, g[s * q + t]), f[m[s][t]]):
                raise ValidationError(f"g does not solve the defect equation at ({s},{t})")
    if not B.lifts_kappa(f):
        raise ValidationError("f does not lift kappa")
    Zm = center_module(B)
    pos = {x: i for i, x in enumerate(B.center.members)}

    def value(s, t, u):
        d = am[am[am[f[s][g[t * q + u]]][g[s * q + m[t][u]]]][ai[g[m[s][t] * q + u]]]][ai[g[s * q + t]]]
        if d not in pos:
            raise ValidationError("dg is not central")
        return pos[ai[d]]

    z = cochain_from_function(Zm, 3, value)
    H = h_n(Zm, 3)
    return ObstructionClass(H, H.key(z), z)


def random_defect_data(B: Band, rng) -> tuple:
    """A random lift ``f`` with a random solution ``g`` of the defect equation."""
    q = B.gamma.order
    f = [B.inner_lists[0][0]] + [B.inner_lists[s][rng.randrange(len(B.inner_lists[s]))] for s in range(1, q)]
    g0 = _defect_witnesses(B, f)
    Z = B.center.members
    A = B.kernel
    g = [int(g0[i]) if i < q or i % q == 0 else int(A.mult[int(g0[i])][Z[rng.randrange(len(Z))]]) for i in range(q * q)]
    return tuple(f), tuple(g)


# ---------------------------------------------------------------------- central action and ab2


def center_action(B: Band, z: AbelianCochain, c) -> H2Class:
    """``[z].[f, g] = [f, z g]`` for a 2-cocycle ``z`` of the center module."""
    H = h2_set(B)
    if isinstance(c, H2Class):
        c = c.representative
    q = B.gamma.order
    emb = B.center.members
    A = B.kernel
    Zm = center_module(B)
    h_n(Zm, 2).key(AbelianCochain(Zm, 2, z.values))  # validates z
    g = tuple(A.mult[emb[z.values[i]]][c.g[i]] for i in range(q * q))
    return H.class_of(Cocycle(B, c.f, g))


def central_action_report(B: Band) -> dict:
    """Free and transitive action of ``H^2(Gamma, Z(A))`` on ``H^2`` of the band."""
    H = h2_set(B)
    Hz = h_n(center_module(B), 2)
    if H.order == 0:
        return {"nonempty": False, "free": True, "transitive": True, "h2": 0, "h2_center": Hz.order}
    emb = np.array(B.center.members, dtype=np.int64)
    zs = emb[np.array([z.values for z in Hz.representatives], dtype=np.int64)]
    images = H.central_orbit(0, zs)
    transitive = set(images) == set(range(H.order))
    free = len(set(images)) == len(images)
    # freeness at every point, not only the base class
    for i in range(1, H.order):
        imgs = H.central_orbit(i, zs)
        free = free and len(set(imgs)) == len(imgs)
    return {"nonempty": True, "free": free, "transitive": transitive, "h2": H.order, "h2_center": Hz.order}


def ab2(B: Band, c) -> AbelianClass:
    """Image of a class under ``[f, g] -> [g mod [A, A]]``."""
    if isinstance(c, H2Class):
        c = c.representative
    rep = is_cocycle(B, c.f, c.g)
    if not rep:
        raise NotCocycle(rep.reason)
    M, proj = abelianization(B)
    z = AbelianCochain(M, 2, tuple(proj.map[x] for x in c.g))
    H = h_n(M, 2)
    return AbelianClass(H, H.class_of(z), z)


# ---------------------------------------------------------------------- representability


def representability_nilpotent(B: Band) -> tuple:
    """Homomorphic lift of a band on a p-group ``A`` with ``p`` prime to ``|Gamma|``.

    Returns ``(f, h)``: ``f`` is a homomorphic lift and ``h`` the equivalence
    carrying the starting cocycle to ``(f, 1)``.
    """
    A, G = B.kernel, B.gamma
    if A.order > 1:
        p = _prime_of_power(A.order)
        if p is None:
            raise HypothesisViolated("kernel is not a p-group")
        if not nilpotency_data(A, p).is_nilpotent:
            raise HypothesisViolated("kernel is not nilpotent")
        if gcd(p, G.order) != 1:
            raise HypothesisViolated(f"p = {p} divides |Gamma| = {G.order}")
    c = _some_cocycle(B)
    h = _trivialize(c)
    d = transform(c, h)
    q = G.order
    if d.g != (0,) * (q * q) or not is_cocycle(B, d.f, d.g):
        raise AssertionError("trivialization failed")
    return d.f, h


def _prime_of_power(n: int):
    for p in range(2, n + 1):
        if n % p == 0:
            if not is_prime(p):
                continue
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return None


def _some_cocycle(B: Band) -> Cocycle:
    """A cocycle on the section, correcting the defect by a central 2-cochain."""
    f, g = defect_cochain(B)
    ob = obstruction(B, f, g)
    if not ob.is_zero:
        raise HypothesisViolated("obstruction does not vanish")
    # dk = (dg)^-1, and d(k g) = dk . dg = 1 since k is central
    k = coprime_average_primitive(ob.cochain)
    A, q = B.kernel, B.gamma.order
    emb = B.center.members
    g2 = tuple(A.mult[emb[k.values[i]]][g[i]] for i in range(q * q))
    return make_cocycle(B, f, g2)


def _trivialize(c: Cocycle) -> tuple:
    """``h`` with ``transform(c, h).g == 1``, by induction along the center."""
    B = c.band
    A, G = B.kernel, B.gamma
    q = G.order
    if A.order == 1:
        return (0,) * q
    Z = B.center
    Bq, proj = quotient_band(B, Z)
    cq = Cocycle(Bq, tuple(induced_automorphism(proj, fs) for fs in c.f), tuple(proj.map[x] for x in c.g))
    if not is_cocycle(Bq, cq.f, cq.g):
        raise AssertionError("quotient cocycle invalid")
    hq = _trivialize(cq)
    reps = coset_representatives(proj)
    h1 = tuple(reps[x] for x in hq)
    d = transform(c, h1)
    pos = {x: i for i, x in enumerate(Z.members)}
    if any(x not in pos for x in d.g):
        raise AssertionError("lifted cocycle is not central")
    Bd = make_band(G, A, d.f)
    Zm = center_module(Bd)
    z = AbelianCochain(Zm, 2, tuple(pos[x] for x in d.g))
    k = coprime_average_primitive(z)
    # dk = z, so transforming by k^-1 removes z
    h2 = tuple(A.inv[Z.members[k.values[s]]] for s in range(q))
    return tuple(A.mult[h2[s]][h1[s]] for s in range(q))


def shift_band(B: Band, f) -> Band:
    return make_band(B.gamma, B.kernel, f)


# ---------------------------------------------------------------------- lifting along a map


@dataclass(frozen=True)
class LiftResult:
    band: Band
    section: tuple
    lift_on_target: tuple
    j: tuple


def lift_band_along(alpha: GroupHom, B: Band, f, f_prime, M) -> LiftResult:
    """Pull the band ``B`` on ``A`` back along ``alpha: Gb -> A``.

    ``f`` is a lift of ``B``'s kappa, ``f_prime`` a candidate section on ``Gb`` and
    ``M`` a subgroup of ``A/Z(A)``, given as members of the quotient labelled as in
    :func:`bandcoh.groups.quotient`.  Each condition that fails raises
    ``ConditionFailed(i)``.
    """
    Gb, A, G = alpha.source, alpha.target, B.gamma
    if A != B.kernel:
        raise ValidationError("alpha must land in the band's kernel")
    q = G.order
    f = tuple(tuple(x) for x in f)
    f_prime = tuple(tuple(x) for x in f_prime)
    if not B.lifts_kappa(f):
        raise ValidationError("f does not lift kappa")
    am = alpha.map
    AGb = aut_group(Gb)
    # (1) compatibility
    if len(f_prime) != q or f_prime[0] != Gb.identity_aut:
        raise ConditionFailed(1, "f' must have one normalized entry per element of Gamma")
    for s in range(q):
        if f_prime[s] not in AGb.index:
            raise ConditionFailed(1, f"f'_{s} is not an automorphism")
        if any(am[f_prime[s][x]] != f[s][am[x]] for x in range(Gb.order)):
            raise ConditionFailed(1, f"alpha o f'_{s} != f_{s} o alpha")
    Q, projA = quotient(A, center(A))
    Mset = make_subgroup(Q, M)
    reps = coset_representatives(projA)
    # (2) unique lifts of inner automorphisms from M
    lift_of = {}
    for mq in Mset.members:
        inner = inner_automorphism(A, reps[mq])
        found = [phi for phi in AGb.elements if all(am[phi[x]] == inner[am[x]] for x in range(Gb.order))]
        if len(found) != 1:
            raise ConditionFailed(2, f"int({mq}) has {len(found)} compatible lifts")
        lift_of[mq] = found[0]
    image = sorted({projA.map[am[x]] for x in range(Gb.order)})
    if any(x not in Mset for x in image):
        raise ConditionFailed(2, "Gb/Z(Gb) does not map into M")
    Im = make_subgroup(Q, image)
    if not _normal_in(Q, Im, Mset):
        raise ConditionFailed(2, "image of Gb is not normal in M")
    # (3) defects in M
    m = G.mult
    gq = [0] * (q * q)
    for s in range(q):
        for t in range(q):
            d = compose(compose(f[s], f[t]), invert(f[m[s][t]]))
            w = B.inner_witness(d)
            gq[s * q + t] = projA.map[w]
            if gq[s * q + t] not in Mset:
                raise ConditionFailed(3, f"defect at ({s},{t}) is not in M")
    # (4) f-conjugation preserves M
    fq = [induced_automorphism(projA, fs) for fs in f]
    for s in range(q):
        if any(fq[s][x] not in Mset for x in Mset.members):
            raise ConditionFailed(4, f"f_{s} does not preserve M")
    # (5) neutrality on C = M / image
    Mg, emb = _subgroup_group(Mset)
    posM = {x: i for i, x in enumerate(Mset.members)}
    imM = make_subgroup(Mg, [posM[x] for x in Im.members])
    C, projC = quotient(Mg, imM)
    fC = [induced_automorphism(projC, tuple(posM[fq[s][x]] for x in Mset.members)) for s in range(q)]
    gC = tuple(projC.map[posM[x]] for x in gq)
    BC = make_band(G, C, fC)
    cC = make_cocycle(BC, fC, gC)
    jbar = _neutralizing_witness(BC, cC)
    if jbar is None:
        raise ConditionFailed(5, "the induced class on the cokernel is not neutral")
    repsC = coset_representatives(projC)
    j = tuple(Mset.members[repsC[x]] for x in jbar)
    jf = tuple(compose(inner_automorphism(A, reps[j[s]]), f[s]) for s in range(q))
    section = tuple(compose(lift_of[j[s]], f_prime[s]) for s in range(q))
    big = make_band(G, Gb, section)
    return LiftResult(big, section, jf, j)


def _normal_in(Q: FiniteGroup, N, M) -> bool:
    Nset = set(N.members)
    return all(Q.mul(m, n, Q.inv[m]) in Nset for m in M.members for n in N.members)


def _subgroup_group(S):
    return subgroup_as_group(S)


def _neutralizing_witness(B: Band, c: Cocycle):
    """``h`` with ``transform(c, h)`` of the form ``(f', 1)``, or None."""
    for phi in homomorphic_lifts(B):
        h = equivalent(B, c, Cocycle(B, phi, (0,) * len(c.g)))
        if h is not None:
            return h
    return None


def lift_representability_transfer(alpha: GroupHom, gamma: FiniteGroup, f_prime, f, i) -> tuple:
    """Given ``i f'`` homomorphic on ``Gb``, return the homomorphic lift ``(alpha~ i) f`` on ``A``.

    ``i`` takes values in ``Gb/Z(Gb)`` (labelled as by :func:`bandcoh.groups.quotient`).
    """
    Gb, A = alpha.source, alpha.target
    am = alpha.map
    q = len(f)
    f = tuple(tuple(x) for x in f)
    f_prime = tuple(tuple(x) for x in f_prime)
    ZG, ZA = center(Gb), center(A)
    if any(am[z] not in ZA for z in ZG.members):
        raise HypothesisViolated("alpha does not map the center into the center")
    for s in range(q):
        if any(am[f_prime[s][x]] != f[s][am[x]] for x in range(Gb.order)):
            raise HypothesisViolated(f"f' and f are not compatible at {s}")
    Qb, projb = quotient(Gb, ZG)
    repsb = coset_representatives(projb)
    AGb = aut_group(Gb)
    gamma_mult = gamma.mult
    for s in range(q):
        for t in range(q):
            st = gamma_mult[s][t]
            dp = compose(compose(f_prime[s], f_prime[t]), invert(f_prime[st]))
            w = AGb.inner_witness.get(dp)
            if w is None:
                raise HypothesisViolated(f"defect of f' at ({s},{t}) is not inner")
            d = compose(compose(f[s], f[t]), invert(f[st]))
            if d != inner_automorphism(A, am[w]):
                raise HypothesisViolated(f"defects do not match through alpha at ({s},{t})")
    ifp = tuple(compose(inner_automorphism(Gb, repsb[i[s]]), f_prime[s]) for s in range(q))
    for s in range(q):
        for t in range(q):
            if compose(ifp[s], ifp[t]) != ifp[gamma_mult[s][t]]:
                raise HypothesisViolated("i f' is not a homomorphism")
    out = tuple(compose(inner_automorphism(A, am[repsb[i[s]]]), f[s]) for s in range(q))
    for s in range(q):
        for t in range(q):
            if compose(out[s], out[t]) != out[gamma_mult[s][t]]:
                raise AssertionError("transferred lift is not a homomorphism")
    return out


# ---------------------------------------------------------------------- inner forms


def inner_form_report(B: Band) -> dict:
    """Compare Gamma-group structures on ``A`` whose band is isomorphic to ``B`` with inner forms.

    Structures are homomorphisms ``Gamma -> Aut(A)`` up to conjugation in
    ``Aut(A)``.  Each is moved into the outer classes of ``B`` and sent to the
    class of ``phi f^-1`` in ``H^1(Gamma, Aut(A))`` (action by ``f``-conjugation),
    for a fixed homomorphic lift ``f``.
    """
    f = is_representable(B)
    if f is None:
        return {"representable": False}
    G, A = B.gamma, B.kernel
    AG = aut_group(A)
    q = G.order
    idx = AG.index
    # Aut(A) as a Gamma-group via f-conjugation
    conj = [tuple(idx[compose(compose(f[s], a), invert(f[s]))] for a in AG.elements) for s in range(q)]
    AutM = make_gamma_group(G, AG.group, conj)
    H1aut = h1_nonabelian(AutM)
    # inner forms: image of H^1(Gamma, A/Z) -> H^1(Gamma, Aut A)
    Zc = center(A)
    Qz, projz = quotient(A, Zc)
    repz = coset_representatives(projz)
    Qm = make_gamma_group(G, Qz, [induced_automorphism(projz, fs) for fs in f])
    H1q = h1_nonabelian(Qm)
    to_aut = [idx[inner_automorphism(A, repz[x])] for x in range(Qz.order)]
    inner_image = {H1aut.class_of(tuple(to_aut[x] for x in rep)) for rep in H1q.representatives}
    # structures: all homomorphic phi whose band is isomorphic to B, up to Aut(A)-conjugacy
    structures = {}
    for phi in _all_actions(G, A):
        moved = _move_into_kappa(B, phi)
        if moved is None:
            continue
        key = min(tuple(compose(compose(b, p), invert(b)) for p in phi) for b in AG.elements)
        gamma_cls = H1aut.class_of(tuple(idx[compose(moved[s], invert(f[s]))] for s in range(q)))
        structures.setdefault(key, set()).add(gamma_cls)
    well_defined = all(len(v) == 1 for v in structures.values())
    images = [next(iter(v)) for v in structures.values()]
    injective = well_defined and len(set(images)) == len(images)
    return {
        "representable": True,
        "structures": len(structures),
        "inner_forms": len(inner_image),
        "well_defined": well_defined,
        "injective": injective,
        "into_inner_forms": set(images) <= inner_image,
    }


def _all_actions(G: FiniteGroup, A: FiniteGroup) -> list:
    AG = aut_group(A)
    return [tuple(AG.elements[x] for x in phi) for phi in homomorphisms(G, AG.group)]


def _move_into_kappa(B: Band, phi):
    """``b phi b^-1`` lifting ``B``'s kappa for some automorphism ``b``, or None."""
    AG = B.aut
    for b in AG.elements:
        bi = invert(b)
        moved = tuple(compose(compose(b, p), bi) for p in phi)
        if all(AG.outer_class(moved[s]) == B.kappa[s] for s in range(len(phi))):
            return moved
    return None
