"""Cohomology of a finite group acting on groups and modules.

Abelian ``H^n(Gamma, M)`` for ``n <= 3`` uses normalized bar cochains;
cocycle and coboundary groups are lattices (see :mod:`bandcoh.lattice`), so
no cochain space is ever enumerated.  Nonabelian ``H^1`` enumerates
crossed homomorphisms by generator-image search.

All actions are left actions: ``action[s][m]`` is ``s.m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import BudgetExceeded, NotCocycle, NotHomomorphism, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    _bfs_words,
    compose,
    coset_representatives,
    induced_automorphism,
    inner_automorphism,
    invert,
    is_hom_map,
    quotient,
    subgroup_as_group,
)
from .lattice import AbelianStructure, ModLattice, lattice_from_generators, preimage_lattice

CLASS_ENUMERATION_CAP = 10**6


@dataclass(frozen=True, eq=False)
class GammaGroup:
    gamma: FiniteGroup
    carrier: FiniteGroup
    action: tuple

    def act(self, s: int, m: int) -> int:
        return self.action[s][m]

    @cached_property
    def key(self):
        return (self.gamma.mult, self.carrier.mult, self.action)

    def __eq__(self, other):
        return isinstance(other, GammaGroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class GammaModule(GammaGroup):
    """A Gamma-group whose carrier is abelian."""

    @cached_property
    def structure(self) -> AbelianStructure:
        return AbelianStructure(self.carrier)


def make_gamma_group(gamma: FiniteGroup, carrier: FiniteGroup, action) -> GammaGroup:
    action = tuple(tuple(int(v) for v in a) for a in action)
    _check_action(gamma, carrier, action)
    return GammaGroup(gamma, carrier, action)


def make_gamma_module(gamma: FiniteGroup, carrier: FiniteGroup, action) -> GammaModule:
    if not carrier.is_abelian:
        raise ValidationError("module carrier must be abelian")
    action = tuple(tuple(int(v) for v in a) for a in action)
    _check_action(gamma, carrier, action)
    return GammaModule(gamma, carrier, action)


def trivial_module(gamma: FiniteGroup, carrier: FiniteGroup) -> GammaModule:
    return make_gamma_module(gamma, carrier, [carrier.identity_aut] * gamma.order)


def as_module(M: GammaGroup) -> GammaModule:
    if isinstance(M, GammaModule):
        return M
    return make_gamma_module(M.gamma, M.carrier, M.action)


def _check_action(gamma, carrier, action):
    if len(action) != gamma.order:
        raise NotHomomorphism(f"action has {len(action)} entries, expected {gamma.order}")
    if action[0] != carrier.identity_aut:
        raise NotHomomorphism("identity of Gamma must act trivially")
    for s, a in enumerate(action):
        if len(a) != carrier.order or len(set(a)) != carrier.order or not is_hom_map(carrier, carrier, a):
            raise NotHomomorphism(f"action of {s} is not an automorphism")
    for s in range(gamma.order):
        for t in range(gamma.order):
            if compose(action[s], action[t]) != action[gamma.mult[s][t]]:
                raise NotHomomorphism(f"action({s}) o action({t}) != action({s}*{t})")


def restrict_module(M: GammaGroup, Z: Subgroup) -> GammaModule:
    """The Gamma-module structure on an abelian, Gamma-stable subgroup."""
    H, emb = subgroup_as_group(Z)
    pos = {x: i for i, x in enumerate(Z.members)}
    try:
        action = [tuple(pos[a[x]] for x in Z.members) for a in M.action]
    except KeyError:
        raise ValidationError("subgroup is not Gamma-stable") from None
    return make_gamma_module(M.gamma, H, action)


def quotient_gamma_group(M: GammaGroup, N: Subgroup) -> tuple:
    """``M/N`` with the induced action; returns (GammaGroup, projection)."""
    Q, proj = quotient(M.carrier, N)
    for a in M.action:
        if any(a[x] not in N for x in N.members):
            raise ValidationError("subgroup is not Gamma-stable")
    action = [induced_automorphism(proj, a) for a in M.action]
    return make_gamma_group(M.gamma, Q, action), proj


# ---------------------------------------------------------------------- cochains


@dataclass(frozen=True)
class AbelianCochain:
    """A normalized cochain ``Gamma^n -> M``; values are indexed row-major."""

    module: GammaModule = field(repr=False, compare=False)
    degree: int
    values: tuple

    def __call__(self, *args: int) -> int:
        return self.values[_flat(args, self.module.gamma.order)]

    def __hash__(self):
        return hash((self.degree, self.values))


def _flat(args, q):
    i = 0
    for a in args:
        i = i * q + a
    return i


def cochain_from_function(M: GammaModule, n: int, fn) -> AbelianCochain:
    q = M.gamma.order
    return AbelianCochain(M, n, tuple(int(fn(*args)) for args in product(range(q), repeat=n)))


def is_normalized(c: AbelianCochain) -> bool:
    q = c.module.gamma.order
    return all(c.values[_flat(args, q)] == 0 for args in product(range(q), repeat=c.degree) if 0 in args)


class CochainComplex:
    """Normalized bar complex of a Gamma-module in coordinates."""

    def __init__(self, M: GammaModule):
        self.module = M
        self.gamma = M.gamma
        self.st = M.structure
        self.r = self.st.rank
        self.E = max(self.st.exponent, 1)
        self.mats = [self.st.aut_matrix(a) for a in M.action]
        nontriv = list(range(1, self.gamma.order))
        self.tuples = [list(product(nontriv, repeat=n)) for n in range(5)]
        self.tuple_pos = [{t: i for i, t in enumerate(ts)} for ts in self.tuples]

    def dim(self, n: int) -> int:
        return len(self.tuples[n]) * self.r

    def relations(self, n: int) -> np.ndarray:
        N = self.dim(n)
        R = np.zeros((N, N), dtype=np.int64)
        for k in range(len(self.tuples[n])):
            for i, d in enumerate(self.st.orders):
                R[k * self.r + i, k * self.r + i] = d
        return R

    def relation_lattice(self, n: int) -> ModLattice:
        return lattice_from_generators(self.dim(n), self.E, self.relations(n))

    def coboundary_matrix(self, n: int) -> np.ndarray:
        """Matrix of d: C^(n-1) -> C^n."""
        key = ("D", n)
        if key not in self._lattices:
            self._lattices[key] = self._coboundary_matrix(n)
        return self._lattices[key]

    def _coboundary_matrix(self, n: int) -> np.ndarray:
        r = self.r
        m = self.gamma.mult
        out_t, in_pos = self.tuples[n], self.tuple_pos[n - 1]
        D = np.zeros((len(out_t) * r, len(self.tuples[n - 1]) * r), dtype=np.int64)
        eye = np.eye(r, dtype=np.int64)
        for oi, tup in enumerate(out_t):
            rs = slice(oi * r, oi * r + r)
            # s1 . phi(s2..)
            j = in_pos[tup[1:]]
            D[rs, j * r : j * r + r] += self.mats[tup[0]]
            for i in range(n - 1):
                merged = tup[:i] + (m[tup[i]][tup[i + 1]],) + tup[i + 2 :]
                if 0 in merged:
                    continue
                j = in_pos[merged]
                D[rs, j * r : j * r + r] += (-1) ** (i + 1) * eye
            j = in_pos[tup[:-1]]
            D[rs, j * r : j * r + r] += (-1) ** n * eye
        return D % self.E if self.E > 1 else D * 0

    def to_vector(self, c: AbelianCochain) -> np.ndarray:
        q = self.gamma.order
        vec = np.zeros(self.dim(c.degree), dtype=np.int64)
        for k, tup in enumerate(self.tuples[c.degree]):
            vec[k * self.r : k * self.r + self.r] = self.st.coords(c.values[_flat(tup, q)])
        return vec

    def from_vector(self, n: int, vec) -> AbelianCochain:
        q = self.gamma.order
        values = [0] * (q**n)
        for k, tup in enumerate(self.tuples[n]):
            values[_flat(tup, q)] = self.st.element(vec[k * self.r : k * self.r + self.r])
        return AbelianCochain(self.module, n, tuple(values))

    def is_cocycle_vector(self, n: int, vec) -> bool:
        if self.r == 0:
            return True
        img = self.coboundary_matrix(n + 1) @ np.asarray(vec, dtype=np.int64)
        orders = np.tile(np.array(self.st.orders, dtype=np.int64), len(self.tuples[n + 1]))
        return not (img % orders).any()

    @cached_property
    def _lattices(self):
        return {}

    def boundaries(self, n: int) -> ModLattice:
        key = ("B", n)
        if key not in self._lattices:
            gens = list(self.relations(n))
            if n > 0:
                gens.extend(self.coboundary_matrix(n).T)
            self._lattices[key] = lattice_from_generators(self.dim(n), self.E, gens)
        return self._lattices[key]

    def cocycles(self, n: int) -> ModLattice:
        key = ("Z", n)
        if key not in self._lattices:
            target = self.relation_lattice(n + 1)
            self._lattices[key] = preimage_lattice(self.coboundary_matrix(n + 1), target, self.relations(n), self.E)
        return self._lattices[key]


_COMPLEX_CACHE: dict = {}


def cochain_complex(M: GammaModule) -> CochainComplex:
    key = M.key
    C = _COMPLEX_CACHE.get(key)
    if C is None:
        C = CochainComplex(as_module(M))
        _COMPLEX_CACHE[key] = C
    return C


def coboundary(c: AbelianCochain) -> AbelianCochain:
    """The coboundary computed directly from the bar formula (no coordinates)."""
    M = c.module
    G, A = M.gamma, M.carrier
    n = c.degree
    q = G.order
    vals = c.values

    def value(*args):
        s = args
        acc = M.action[s[0]][vals[_flat(s[1:], q)]]
        for i in range(n):
            merged = s[:i] + (G.mult[s[i]][s[i + 1]],) + s[i + 2 :]
            v = vals[_flat(merged, q)]
            acc = A.mult[acc][v if i % 2 else A.inv[v]]
        last = vals[_flat(s[:-1], q)]
        acc = A.mult[acc][last if n % 2 else A.inv[last]]
        return acc

    return cochain_from_function(M, n + 1, value)


class Cohomology:
    """``H^n(Gamma, M)`` with canonical class representatives."""

    def __init__(self, M: GammaModule, n: int, cap: int = CLASS_ENUMERATION_CAP):
        if not 0 <= n <= 3:
            raise ValidationError("only degrees 0..3 are supported")
        self.module = M
        self.degree = n
        self.complex = cochain_complex(M)
        self._cap = cap

    @cached_property
    def order(self) -> int:
        C = self.complex
        if C.r == 0:
            return 1
        return C.boundaries(self.degree).index // C.cocycles(self.degree).index

    def key(self, c: AbelianCochain) -> tuple:
        """Canonical residue of a cocycle modulo coboundaries."""
        C = self.complex
        if C.r == 0:
            return ()
        vec = C.to_vector(c)
        if not C.is_cocycle_vector(self.degree, vec):
            raise NotCocycle(f"cochain is not a {self.degree}-cocycle")
        return tuple(int(v) for v in C.boundaries(self.degree).reduce(vec))

    @cached_property
    def _classes(self):
        C = self.complex
        if C.r == 0:
            return [()], {(): 0}
        B = C.boundaries(self.degree)
        gens = [B.reduce(row) for row in C.cocycles(self.degree).basis()]
        gens = [g for g in gens if g.any()]
        zero = tuple(int(v) for v in B.reduce(np.zeros(C.dim(self.degree), dtype=np.int64)))
        seen = {zero}
        frontier = [np.array(zero, dtype=np.int64)]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = tuple(int(x) for x in B.reduce(v + g))
                    if w not in seen:
                        seen.add(w)
                        if len(seen) > self._cap:
                            raise BudgetExceeded(f"H^{self.degree} has more than {self._cap} classes")
                        nxt.append(np.array(w, dtype=np.int64))
            frontier = nxt
        keys = sorted(seen)
        return keys, {k: i for i, k in enumerate(keys)}

    @property
    def keys(self) -> list:
        return self._classes[0]

    @cached_property
    def representatives(self) -> list:
        C = self.complex
        if C.r == 0:
            return [cochain_from_function(self.module, self.degree, lambda *a: 0)]
        return [C.from_vector(self.degree, np.array(k, dtype=np.int64)) for k in self.keys]

    def class_of(self, c: AbelianCochain) -> int:
        return self._classes[1][self.key(c)]

    def is_zero(self, c: AbelianCochain) -> bool:
        return self.class_of(c) == 0 if self.order else True

    def is_coboundary(self, c: AbelianCochain) -> bool:
        C = self.complex
        if C.r == 0:
            return True
        return not C.boundaries(self.degree).reduce(C.to_vector(c)).any()


_COH_CACHE: dict = {}


def h_n(M: GammaModule, n: int) -> Cohomology:
    """``H^n(Gamma, M)`` for 0 <= n <= 3."""
    M = as_module(M)
    key = (M.key, n)
    H = _COH_CACHE.get(key)
    if H is None:
        H = Cohomology(M, n)
        _COH_CACHE[key] = H
    return H


def fixed_points(M: GammaGroup) -> Subgroup:
    return Subgroup(M.carrier, tuple(x for x in range(M.carrier.order) if all(a[x] == x for a in M.action)))


def coprime_average_primitive(c: AbelianCochain) -> AbelianCochain:
    """For ``gcd(|Gamma|, |M|) = 1`` and an n-cocycle ``z``, a cochain ``k`` with ``dk = z``.

    Uses ``k = (-1)^n |Gamma|^-1 sum_t z(s_1, ..., s_{n-1}, t)``.
    """
    M = c.module
    G, A = M.gamma, M.carrier
    q = G.order
    n = c.degree
    exp = max(AbelianStructure(A).exponent, 1) if A.order > 1 else 1
    inv_q = pow(q, -1, exp) if exp > 1 else 0
    sign = -1 if n % 2 else 1

    def value(*args):
        acc = 0
        for t in range(q):
            acc = A.mult[acc][c.values[_flat(args + (t,), q)]]
        return A.power(acc, sign * inv_q)

    return cochain_from_function(M, n - 1, value)


# ---------------------------------------------------------------------- nonabelian H^1


def is_one_cocycle(M: GammaGroup, a) -> bool:
    G, C = M.gamma, M.carrier
    return all(a[G.mult[s][t]] == C.mult[a[s]][M.action[s][a[t]]] for s in range(G.order) for t in range(G.order))


def z1_nonabelian(M: GammaGroup, cap: int = CLASS_ENUMERATION_CAP) -> list:
    """All crossed homomorphisms ``a_st = a_s . s(a_t)``, sorted."""
    G, C = M.gamma, M.carrier
    if G.order == 1:
        return [(0,)]
    gens = G.generators
    tree = _bfs_words(G, gens)
    gm, cm, act = G.mult, C.mult, M.action
    out = []
    count = 0
    for imgs in product(range(C.order), repeat=len(gens)):
        count += 1
        if count > cap:
            raise BudgetExceeded("crossed homomorphism search exceeded its cap")
        a = [None] * G.order
        a[0] = 0
        for y, x, i in tree[1:]:
            a[y] = cm[a[x]][act[x][imgs[i]]]
        ok = True
        for x in range(G.order):
            for i, g in enumerate(gens):
                if a[gm[x][g]] != cm[a[x]][act[x][imgs[i]]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(a))
    return sorted(set(out))


@dataclass(frozen=True, eq=False)
class H1:
    """Nonabelian ``H^1``: classes of crossed homomorphisms, class 0 distinguished."""

    module: GammaGroup
    cocycles: tuple
    representatives: tuple
    lookup: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.representatives)

    def class_of(self, a) -> int:
        a = tuple(a)
        if a not in self.lookup:
            raise NotCocycle("not a 1-cocycle")
        return self.lookup[a]


def one_cocycle_transform(M: GammaGroup, a, m: int) -> tuple:
    """``s -> m^-1 a_s s(m)``"""
    C = M.carrier
    mi = C.inv[m]
    return tuple(C.mult[C.mult[mi][a[s]]][M.action[s][m]] for s in range(M.gamma.order))


_H1_CACHE: dict = {}


def h1_nonabelian(M: GammaGroup) -> H1:
    key = M.key
    if key in _H1_CACHE:
        return _H1_CACHE[key]
    z1 = z1_nonabelian(M)
    label = {}
    orbits = []
    for a in z1:
        if a in label:
            continue
        orb = {one_cocycle_transform(M, a, m) for m in range(M.carrier.order)}
        orbits.append(sorted(orb))
        for b in orb:
            label[b] = None
    orbits.sort(key=lambda o: o[0])
    lookup = {}
    for i, orb in enumerate(orbits):
        for b in orb:
            lookup[b] = i
    H = H1(M, tuple(z1), tuple(o[0] for o in orbits), lookup)
    _H1_CACHE[key] = H
    return H


def twist_gamma_group(M: GammaGroup, a) -> GammaGroup:
    """Twist by an ``Aut(M)``-valued 1-cocycle: new action ``s -> a_s o s``."""
    a = [tuple(x) for x in a]
    G = M.gamma
    if len(a) != G.order:
        raise NotCocycle("cocycle must have one value per element of Gamma")
    for s in range(G.order):
        for t in range(G.order):
            conj = compose(compose(M.action[s], a[t]), invert(M.action[s]))
            if a[G.mult[s][t]] != compose(a[s], conj):
                raise NotCocycle(f"cocycle identity fails at ({s},{t})")
    action = [compose(a[s], M.action[s]) for s in range(G.order)]
    try:
        return make_gamma_group(G, M.carrier, action)
    except NotHomomorphism as exc:
        raise NotCocycle(str(exc)) from exc


def inner_twist(M: GammaGroup, lifts) -> GammaGroup:
    """Twist by ``s -> int(lifts[s])``; ``lifts`` must induce a cocycle mod the center."""
    return twist_gamma_group(M, [inner_automorphism(M.carrier, x) for x in lifts])


# ---------------------------------------------------------------------- connecting maps


def _check_central_stable(M: GammaGroup, Z: Subgroup):
    C = M.carrier
    for z in Z.members:
        if any(C.mult[z][x] != C.mult[x][z] for x in range(C.order)):
            raise ValidationError("subgroup is not central")
        if any(a[z] not in Z for a in M.action):
            raise ValidationError("subgroup is not Gamma-stable")


@dataclass(frozen=True)
class AbelianClass:
    cohomology: Cohomology = field(repr=False, compare=False)
    index: int
    cochain: AbelianCochain = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return self.index == 0


def connecting_delta(M: GammaGroup, Z: Subgroup, c, lift=None) -> AbelianClass:
    """The class in ``H^2(Gamma, Z)`` of ``(s,t) -> c_s . s(c_t) . c_st^-1`` for a set lift of ``c``."""
    _check_central_stable(M, Z)
    Q, proj = quotient_gamma_group(M, Z)
    c = tuple(c)
    if not is_one_cocycle(Q, c):
        raise NotCocycle("c is not a 1-cocycle of M/Z")
    C, G = M.carrier, M.gamma
    if lift is None:
        reps = coset_representatives(proj)
        lift = [reps[x] for x in c]
    lift = list(lift)
    if lift[0] != 0 or any(proj.map[lift[s]] != c[s] for s in range(G.order)):
        raise ValidationError("lift must be normalized and project onto c")
    Zmod = restrict_module(M, Z)
    pos = {x: i for i, x in enumerate(Z.members)}

    def value(s, t):
        v = C.mul(lift[s], M.action[s][lift[t]], C.inv[lift[G.mult[s][t]]])
        return pos[v]

    z = cochain_from_function(Zmod, 2, value)
    H = h_n(Zmod, 2)
    return AbelianClass(H, H.class_of(z), z)


def delta_zero(M: GammaGroup, Z: Subgroup, q: int) -> AbelianClass:
    """``H^0(M/Z) -> H^1(Z)``: class of ``s -> m^-1 s(m)`` for a lift ``m`` of ``q``."""
    _check_central_stable(M, Z)
    Q, proj = quotient_gamma_group(M, Z)
    m = coset_representatives(proj)[q]
    C = M.carrier
    Zmod = restrict_module(M, Z)
    pos = {x: i for i, x in enumerate(Z.members)}
    z = cochain_from_function(Zmod, 1, lambda s: pos[C.mult[C.inv[m]][M.action[s][m]]])
    H = h_n(Zmod, 1)
    return AbelianClass(H, H.class_of(z), z)


@dataclass(frozen=True)
class TwistedClass:
    twisted: GammaGroup = field(repr=False)
    cocycle: tuple
    index: int


def twisted_quotient(M: GammaGroup, Z: Subgroup, P) -> GammaGroup:
    """The inner twist of ``M/Z`` by the cocycle ``P`` (values in M/Z)."""
    Q, _ = quotient_gamma_group(M, Z)
    P = tuple(P)
    if not is_one_cocycle(Q, P):
        raise NotCocycle("P is not a 1-cocycle of M/Z")
    return inner_twist(Q, P)


def tau_translation(M: GammaGroup, Z: Subgroup, P, x) -> TwistedClass:
    """Class of ``s -> x_s . P_s^-1`` in ``H^1`` of the inner twist of ``M/Z`` by ``P``."""
    Q, _ = quotient_gamma_group(M, Z)
    TQ = twisted_quotient(M, Z, P)
    x = tuple(x)
    if not is_one_cocycle(Q, x):
        raise NotCocycle("x is not a 1-cocycle of M/Z")
    Qc = Q.carrier
    y = tuple(Qc.mult[x[s]][Qc.inv[P[s]]] for s in range(M.gamma.order))
    H = h1_nonabelian(TQ)
    return TwistedClass(TQ, y, H.class_of(y))


def lift_twist(M: GammaGroup, Z: Subgroup, P) -> tuple:
    """Inner twist of ``M`` itself by a set lift of ``P``; returns (twisted M, lift)."""
    _, proj = quotient_gamma_group(M, Z)
    reps = coset_representatives(proj)
    lift = [reps[p] for p in P]
    return inner_twist(M, lift), lift


# ---------------------------------------------------------------------- exact sequence


def exact_sequence_report(M: GammaGroup, Z: Subgroup) -> dict:
    """Exactness of H0(Z) -> H0(M) -> H0(M/Z) -> H1(Z) -> H1(M) -> H1(M/Z) -> H2(Z).

    Each entry is True when the fibre over the distinguished point equals the
    image of the previous map at that term.
    """
    _check_central_stable(M, Z)
    Q, proj = quotient_gamma_group(M, Z)
    Zmod = restrict_module(M, Z)
    fixM = fixed_points(M).members
    fixQ = fixed_points(Q).members
    fixZ = [Z.members[i] for i in fixed_points(Zmod).members]
    H1Z, H1M, H1Q = h1_nonabelian(Zmod), h1_nonabelian(M), h1_nonabelian(Q)
    report = {}
    # at H0(M): kernel of projection = image of H0(Z)
    report["H0(M)"] = sorted(m for m in fixM if proj.map[m] == 0) == sorted(fixZ)
    # at H0(M/Z): image of H0(M) = fibre of delta0 over 0
    img = {proj.map[m] for m in fixM}
    fib = {q for q in fixQ if delta_zero(M, Z, q).is_zero}
    report["H0(M/Z)"] = img == fib
    # at H1(Z): image of delta0 = kernel of H1(Z) -> H1(M)
    img = {H1Z.class_of(delta_zero(M, Z, q).cochain.values) for q in fixQ}
    to_M = {i: H1M.class_of(tuple(Z.members[v] for v in rep)) for i, rep in enumerate(H1Z.representatives)}
    ker = {i for i, j in to_M.items() if j == 0}
    report["H1(Z)"] = img == ker
    # at H1(M): image of H1(Z) = fibre over 1 of H1(M) -> H1(M/Z)
    img = set(to_M.values())
    to_Q = {i: H1Q.class_of(tuple(proj.map[v] for v in rep)) for i, rep in enumerate(H1M.representatives)}
    report["H1(M)"] = img == {i for i, j in to_Q.items() if j == 0}
    # at H1(M/Z): image of H1(M) = fibre of delta over 0
    img = set(to_Q.values())
    fib = {i for i, rep in enumerate(H1Q.representatives) if connecting_delta(M, Z, rep).is_zero}
    report["H1(M/Z)"] = img == fib
    return report


def twisting_report(M: GammaGroup, Z: Subgroup, P) -> dict:
    """Check ``tau_P`` on ``H^1(M/Z)``: well defined, bijective, ``tau_P([P])`` trivial,
    and ``delta_P(tau_P(x)) = delta(x) - delta(P)`` in ``H^2(Z)``.
    """
    Q, _ = quotient_gamma_group(M, Z)
    P = tuple(P)
    H1Q = h1_nonabelian(Q)
    MP, _ = lift_twist(M, Z, P)
    TQ = twisted_quotient(M, Z, P)
    TQ2, _ = quotient_gamma_group(MP, Z)
    H1T = h1_nonabelian(TQ)
    Zc = as_module(restrict_module(M, Z)).carrier
    dP = connecting_delta(M, Z, P)
    image_of = {}
    well_defined = True
    compatible = True
    for x in H1Q.cocycles:
        tx = tau_translation(M, Z, P, x)
        i = H1Q.class_of(x)
        if image_of.setdefault(i, tx.index) != tx.index:
            well_defined = False
        lhs = connecting_delta(MP, Z, tx.cocycle)
        dx = connecting_delta(M, Z, x)
        diff = tuple(Zc.mult[a][Zc.inv[b]] for a, b in zip(dx.cochain.values, dP.cochain.values))
        rhs = dx.cohomology.class_of(AbelianCochain(dx.cochain.module, 2, diff))
        if lhs.index != rhs or lhs.cohomology.module != dx.cohomology.module:
            compatible = False
    images = list(image_of.values())
    return {
        "twisted_quotient_matches": TQ == TQ2,
        "well_defined": well_defined,
        "bijective": len(set(images)) == len(images) == H1T.order,
        "distinguished": tau_translation(M, Z, P, P).index == 0,
        "delta_compatible": compatible,
    }
