"""Bands of stabilizers of finite equivariant homogeneous spaces.

A space is a Gamma-group ``(G, sigma)`` acting transitively on the right of a
finite set ``X`` that also carries a left Gamma-action, with
``s(x.g) = s(x).sigma_s(g)``.  For a base point ``x`` with stabilizer ``H``
and transporters ``s(x).g_s = x``:

    f_s = int(g_s)^-1 o sigma_s  (restricted to H)
    h_{s,t} = g_s^-1 sigma_s(g_t)^-1 g_st
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .band import Band, make_band
from .cohomology import GammaGroup, make_gamma_group
from .errors import NotHomomorphism, ValidationError
from .groups import FiniteGroup, Subgroup, _bfs_words, all_subgroups, aut_group, homomorphisms, subgroup_as_group
from .h2 import Cocycle, H2Class, h2_set, make_cocycle


@dataclass(frozen=True, eq=False)
class EquivariantSpace:
    group: GammaGroup
    right_action: tuple  # right_action[x][g] = x.g
    gamma_action: tuple  # gamma_action[x][s] = s(x)

    @property
    def points(self) -> int:
        return len(self.right_action)

    @property
    def gamma(self) -> FiniteGroup:
        return self.group.gamma


def make_space(group: GammaGroup, right_action, gamma_action) -> EquivariantSpace:
    G, Gam = group.carrier, group.gamma
    ra = tuple(tuple(int(v) for v in row) for row in right_action)
    ga = tuple(tuple(int(v) for v in row) for row in gamma_action)
    n = len(ra)
    if n == 0:
        raise ValidationError("space has no points")
    if len(ga) != n:
        raise ValidationError("gamma_action needs one row per point")
    for x in range(n):
        if len(ra[x]) != G.order or any(not 0 <= y < n for y in ra[x]):
            raise ValidationError(f"right_action row {x} is malformed")
        if len(ga[x]) != Gam.order or any(not 0 <= y < n for y in ga[x]):
            raise ValidationError(f"gamma_action row {x} is malformed")
        if ra[x][0] != x:
            raise ValidationError(f"identity of G moves point {x}")
        if ga[x][0] != x:
            raise ValidationError(f"identity of Gamma moves point {x}")
    for x in range(n):
        for g in range(G.order):
            for h in range(G.order):
                if ra[ra[x][g]][h] != ra[x][G.mult[g][h]]:
                    raise ValidationError(f"not a right action at (x,g,h)=({x},{g},{h})")
        for s in range(Gam.order):
            for t in range(Gam.order):
                if ga[ga[x][t]][s] != ga[x][Gam.mult[s][t]]:
                    raise ValidationError(f"not a Gamma-action at (x,s,t)=({x},{s},{t})")
    if len(set(ra[0])) != n:
        raise ValidationError("G does not act transitively")
    for x in range(n):
        for s in range(Gam.order):
            for g in range(G.order):
                if ga[ra[x][g]][s] != ra[ga[x][s]][group.action[s][g]]:
                    raise ValidationError(f"s(x.g) != s(x).sigma_s(g) at (x,s,g)=({x},{s},{g})")
    return EquivariantSpace(group, ra, ga)


def stabilizer(sp: EquivariantSpace, x: int) -> Subgroup:
    return Subgroup(sp.group.carrier, tuple(g for g in range(sp.group.carrier.order) if sp.right_action[x][g] == x))


def transporter(sp: EquivariantSpace, x: int) -> tuple:
    """Least ``g_s`` with ``s(x).g_s = x`` for each ``s``."""
    out = []
    for s in range(sp.gamma.order):
        y = sp.gamma_action[x][s]
        out.append(next(g for g in range(sp.group.carrier.order) if sp.right_action[y][g] == x))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class SpringerData:
    base: int
    stabilizer: Subgroup
    transporter: tuple
    band: Band
    cocycle: Cocycle


def springer_cocycle(sp: EquivariantSpace, x: int, transporters=None) -> SpringerData:
    G, Gam = sp.group.carrier, sp.gamma
    sigma = sp.group.action
    H = stabilizer(sp, x)
    g = transporter(sp, x) if transporters is None else tuple(transporters)
    for s in range(Gam.order):
        if sp.right_action[sp.gamma_action[x][s]][g[s]] != x:
            raise ValidationError(f"g_{s} is not a transporter")
    if g[0] != 0:
        raise ValidationError("g_1 must be the identity")
    Hg, _ = subgroup_as_group(H)
    pos = {y: i for i, y in enumerate(H.members)}
    f = []
    for s in range(Gam.order):
        gi = G.inv[g[s]]
        img = [G.mul(gi, sigma[s][k], g[s]) for k in H.members]
        if any(y not in pos for y in img):
            raise AssertionError("f_s does not preserve the stabilizer")
        f.append(tuple(pos[y] for y in img))
    q = Gam.order
    hv = []
    for s in range(q):
        for t in range(q):
            y = G.mul(G.inv[g[s]], G.inv[sigma[s][g[t]]], g[Gam.mult[s][t]])
            if y not in pos:
                raise AssertionError("h_{s,t} is not in the stabilizer")
            hv.append(pos[y])
    B = make_band(Gam, Hg, f)
    return SpringerData(x, H, g, B, make_cocycle(B, f, hv))


def _transport_to_base(sp: EquivariantSpace, base: SpringerData, other: SpringerData) -> Cocycle:
    """Move the cocycle at ``x' = x.gt`` to the base band through ``k -> gt k gt^-1``."""
    G = sp.group.carrier
    x, x2 = base.base, other.base
    gt = next(g for g in range(G.order) if sp.right_action[x][g] == x2)
    pos = {y: i for i, y in enumerate(base.stabilizer.members)}
    members2 = other.stabilizer.members
    alpha = tuple(pos[G.mul(gt, k, G.inv[gt])] for k in members2)
    ainv = [0] * len(alpha)
    for i, a in enumerate(alpha):
        ainv[a] = i
    f = tuple(tuple(alpha[fs[ainv[k]]] for k in range(len(alpha))) for fs in other.cocycle.f)
    g = tuple(alpha[v] for v in other.cocycle.g)
    return make_cocycle(base.band, f, g)


@dataclass(frozen=True, eq=False)
class SpringerClass:
    band: Band
    h2_class: H2Class
    point_classes: tuple = field(repr=False)

    @property
    def neutral(self) -> bool:
        return self.h2_class.neutral

    @property
    def base_point_independent(self) -> bool:
        return len(set(self.point_classes)) == 1


def springer_class(sp: EquivariantSpace) -> SpringerClass:
    """Class of the Springer cocycle at point 0, with the class seen from every point."""
    base = springer_cocycle(sp, 0)
    H = h2_set(base.band)
    classes = []
    for x in range(sp.points):
        data = base if x == 0 else springer_cocycle(sp, x)
        classes.append(H.class_index(_transport_to_base(sp, base, data)))
    return SpringerClass(base.band, H.class_of(base.cocycle), tuple(classes))


def fixed_points(sp: EquivariantSpace) -> list:
    return [x for x in range(sp.points) if all(y == x for y in sp.gamma_action[x])]


def has_equivariant_lift(sp: EquivariantSpace, x: int = 0):
    """A cocycle ``a`` in ``Z^1(Gamma, G)`` with ``a_s^-1`` a transporter at ``x``, or None.

    Such ``a`` is a transporter family with trivial Springer defect.
    """
    G, Gam = sp.group.carrier, sp.gamma
    sigma = sp.group.action
    if Gam.order == 1:
        return (0,)
    gens = Gam.generators
    tree = _bfs_words(Gam, gens)
    ok_for = [
        {G.inv[g] for g in range(G.order) if sp.right_action[sp.gamma_action[x][s]][g] == x} for s in range(Gam.order)
    ]
    for imgs in product(*[sorted(ok_for[s]) for s in gens]):
        a = [None] * Gam.order
        a[0] = 0
        for y, p, i in tree[1:]:
            a[y] = G.mult[a[p]][sigma[p][imgs[i]]]
        if any(a[s] not in ok_for[s] for s in range(Gam.order)):
            continue
        if all(
            a[Gam.mult[p][g]] == G.mult[a[p]][sigma[p][imgs[i]]] for p in range(Gam.order) for i, g in enumerate(gens)
        ):
            return tuple(a)
    return None


# ---------------------------------------------------------------------- random spaces


def coset_space(group: GammaGroup, H0: Subgroup, c) -> EquivariantSpace:
    """``X = H0\\G`` with ``x.g`` by right multiplication and ``s(H0 y) = H0 c_s sigma_s(y)``."""
    G, Gam = group.carrier, group.gamma
    label = {}
    reps = []
    for y in range(G.order):
        if y in label:
            continue
        k = len(reps)
        reps.append(y)
        for h in H0.members:
            label[G.mult[h][y]] = k
    ra = [[label[G.mult[r][g]] for g in range(G.order)] for r in reps]
    ga = [[label[G.mult[c[s]][group.action[s][r]]] for s in range(Gam.order)] for r in reps]
    return make_space(group, ra, ga)


def coset_twists(group: GammaGroup, H0: Subgroup) -> list:
    """All ``c: Gamma -> G`` (least coset representatives) giving a valid coset space."""
    G, Gam = group.carrier, group.gamma
    sigma = group.action
    Hs = set(H0.members)
    label = {}
    reps = []
    for y in range(G.order):
        if y in label:
            continue
        reps.append(y)
        for h in H0.members:
            label[G.mult[h][y]] = len(reps) - 1

    def ok_single(s, cs):
        # s(H0 y) = H0 c_s sigma_s(y) must be well defined
        return all(G.mul(cs, sigma[s][h], G.inv[cs]) in Hs for h in H0.members)

    options = [[r for r in reps if ok_single(s, r)] for s in range(Gam.order)]
    if 0 not in options[0]:
        return []
    out = []
    for combo in product(*options[1:]):
        c = (0,) + combo
        if all(
            label[G.mult[c[s]][sigma[s][c[t]]]] == label[c[Gam.mult[s][t]]]
            for s in range(Gam.order)
            for t in range(Gam.order)
        ):
            out.append(c)
    return out


def random_space(rng, gammas, groups) -> EquivariantSpace:
    """A random coset space over a random Gamma-group; ``gammas``/``groups`` are lists of groups."""
    while True:
        Gam = rng.choice(gammas)
        G = rng.choice(groups)
        AG = aut_group(G)
        homs = homomorphisms(Gam, AG.group)
        phi = rng.choice(homs)
        try:
            group = make_gamma_group(Gam, G, [AG.elements[i] for i in phi])
        except NotHomomorphism:
            continue
        subs = all_subgroups(G)
        H0 = rng.choice(subs)
        twists = coset_twists(group, H0)
        if not twists:
            continue
        return coset_space(group, H0, rng.choice(twists))
