"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Automorphisms and other self-maps are plain tuples of images, so that
``phi[x]`` is the image of ``x``; composition ``compose(phi, psi)`` is
``phi o psi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotHomomorphism,
    NotNormal,
    ValidationError,
)

DEFAULT_CANDIDATE_CAP = 10**6

Aut = tuple  # image tuple of a bijective endomorphism


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mult: tuple
    inv: tuple
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.mult)

    identity = 0

    def __len__(self):
        return len(self.mult)

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} of order {self.order}>"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    @cached_property
    def table(self) -> np.ndarray:
        return np.array(self.mult, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def inv_array(self) -> np.ndarray:
        return np.array(self.inv, dtype=np.int64)

    def mul(self, *xs: int) -> int:
        r = 0
        m = self.mult
        for x in xs:
            r = m[r][x]
        return r

    def conj(self, a: int, x: int) -> int:
        """a x a^-1"""
        m = self.mult
        return m[m[a][x]][self.inv[a]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        r = 0
        m = self.mult
        for _ in range(k):
            r = m[r][x]
        return r

    @cached_property
    def element_orders(self) -> tuple:
        out = []
        m = self.mult
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = m[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    @cached_property
    def identity_aut(self) -> Aut:
        return tuple(range(self.order))

    @cached_property
    def generators(self) -> tuple:
        """A small deterministic generating set (greedy, by maximal order)."""
        gens = []
        current = {0}
        orders = self.element_orders
        while len(current) < self.order:
            best = max((x for x in range(self.order) if x not in current), key=lambda x: (orders[x], -x))
            gens.append(best)
            current = set(_closure(self, list(gens)))
        return tuple(gens)


def make_group(mult_table, name: str = "") -> FiniteGroup:
    """Validate a multiplication table and build a :class:`FiniteGroup`."""
    rows = [list(r) for r in mult_table]
    n = len(rows)
    if n < 1:
        raise ValidationError("empty multiplication table")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValidationError(f"row {i} has length {len(r)}, expected {n}")
        for j, v in enumerate(r):
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise ValidationError(f"entry ({i},{j}) = {v!r} is out of range")
    t = np.array(rows, dtype=np.int64)
    idx = np.arange(n)
    ids = [e for e in range(n) if (t[e] == idx).all() and (t[:, e] == idx).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    if ids[0] != 0:
        raise NoIdentity(f"identity must be element 0 (found at {ids[0]})")
    inv = []
    for x in range(n):
        ys = np.nonzero((t[x] == 0) & (t[:, x] == 0))[0]
        if len(ys) == 0:
            raise NoInverse(f"element {x} has no two-sided inverse")
        inv.append(int(ys[0]))
    # (xy)z == x(yz) for all triples
    left = t[t]  # left[i, j, k] = t[t[i, j], k]
    right = t[idx[:, None, None], t[None, :, :]]  # right[i, j, k] = t[i, t[j, k]]
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise NotAssociative(f"({i}*{j})*{k} = {int(left[i, j, k])} but {i}*({j}*{k}) = {int(right[i, j, k])}")
    return FiniteGroup(tuple(tuple(int(v) for v in r) for r in rows), tuple(inv), name)


# ---------------------------------------------------------------- subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: tuple

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x):
        return x in self._set

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def _set(self):
        return frozenset(self.members)


def _closure(G: FiniteGroup, gens: Iterable[int]) -> list:
    seen = {0}
    frontier = [0]
    gens = list(gens)
    m = G.mult
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = m[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(_closure(G, gens)))


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    ms = sorted(set(members))
    s = set(ms)
    if 0 not in s:
        raise ValidationError("subgroup must contain the identity")
    for x in ms:
        if G.inv[x] not in s:
            raise ValidationError(f"subgroup not closed under inverse at {x}")
        for y in ms:
            if G.mult[x][y] not in s:
                raise ValidationError(f"subgroup not closed at {x}*{y}")
    return Subgroup(G, tuple(ms))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    return all(G.conj(g, n) in N for g in G.generators for n in N.members)


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, tuple(int(z) for z in range(G.order) if (t[z] == t[:, z]).all()))


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """[H, K], generated by h k h^-1 k^-1."""
    inv = G.inv
    comms = {G.mul(h, k, inv[h], inv[k]) for h in H.members for k in K.members}
    return generated_subgroup(G, sorted(comms))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    W = whole(G)
    return commutator_subgroup(G, W, W)


def subgroup_as_group(S: Subgroup, name: str = "") -> tuple:
    """Relabel a subgroup as a standalone group.

    Returns ``(H, embedding)`` where element ``i`` of ``H`` is ``S.members[i]``.
    """
    G = S.parent
    members = S.members
    pos = {x: i for i, x in enumerate(members)}
    mult = tuple(tuple(pos[G.mult[x][y]] for y in members) for x in members)
    inv = tuple(pos[G.inv[x]] for x in members)
    H = FiniteGroup(mult, inv, name)
    return H, GroupHom(H, G, tuple(members))


def all_subgroups(G: FiniteGroup, limit: int = 10**5) -> list:
    """Every subgroup of ``G`` (by closure of generated subgroups)."""
    found = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            s = set(members)
            for x in range(G.order):
                if x in s:
                    continue
                new = tuple(_closure(G, list(members) + [x]))
                if new not in found:
                    found.add(new)
                    nxt.append(new)
                    if len(found) > limit:
                        raise BudgetExceeded("too many subgroups")
        frontier = nxt
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (len(m), m))]


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup = field(repr=False)
    target: FiniteGroup = field(repr=False)
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.map)

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(x for x in range(self.source.order) if self.map[x] == 0))

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.map))))


def make_hom(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> GroupHom:
    images = tuple(int(v) for v in images)
    if len(images) != source.order:
        raise NotHomomorphism(f"map has {len(images)} entries, expected {source.order}")
    if images[0] != 0:
        raise NotHomomorphism("identity not mapped to identity")
    img = np.array(images)
    lhs = img[source.table]
    rhs = target.table[img[:, None], img[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise NotHomomorphism(f"map({x}*{y}) != map({x})*map({y})")
    return GroupHom(source, target, images)


def is_hom_map(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> bool:
    img = np.asarray(images)
    return bool((img[source.table] == target.table[img[:, None], img[None, :]]).all())


def compose(phi: Aut, psi: Aut) -> Aut:
    """phi o psi"""
    return tuple(phi[x] for x in psi)


def invert(phi: Aut) -> Aut:
    out = [0] * len(phi)
    for x, y in enumerate(phi):
        out[y] = x
    return tuple(out)


def inner_automorphism(G: FiniteGroup, a: int) -> Aut:
    """x -> a x a^-1"""
    m = G.mult
    ai = G.inv[a]
    return tuple(m[m[a][x]][ai] for x in range(G.order))


def _bfs_words(G: FiniteGroup, gens: Sequence[int]):
    """BFS spanning tree of the Cayley graph: list of (x, parent, gen index)."""
    seen = {0}
    order = [(0, None, None)]
    frontier = [0]
    m = G.mult
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = m[x][g]
                if y not in seen:
                    seen.add(y)
                    order.append((y, x, i))
                    nxt.append(y)
        frontier = nxt
    return order


def _extend(G, H, tree, gens, images):
    """Extend generator images along the tree; verify every Cayley edge."""
    phi = {0: 0}
    hm = H.mult
    for y, x, i in tree[1:]:
        phi[y] = hm[phi[x]][images[i]]
    gm = G.mult
    for x in phi:
        px = phi[x]
        for i, g in enumerate(gens):
            if phi[gm[x][g]] != hm[px][images[i]]:
                return None
    return phi


def _search_homs(G, H, *, bijective, cap=DEFAULT_CANDIDATE_CAP):
    """All homomorphisms G -> H via generator-image backtracking."""
    gens = G.generators
    word_trees = [_bfs_words(G, gens[: k + 1]) for k in range(len(gens))]
    go, ho = G.element_orders, H.element_orders
    cands = []
    for g in gens:
        if bijective:
            cands.append([h for h in range(H.order) if ho[h] == go[g]])
        else:
            cands.append([h for h in range(H.order) if go[g] % ho[h] == 0])
    results = []
    counter = [0]

    def rec(k, images):
        if k == len(gens):
            phi = _extend(G, H, word_trees[-1], gens, images)
            if phi is None:
                return
            m = tuple(phi[x] for x in range(G.order))
            if bijective and len(set(m)) != H.order:
                return
            results.append(m)
            return
        for h in cands[k]:
            counter[0] += 1
            if counter[0] > cap:
                raise BudgetExceeded(f"homomorphism search exceeded {cap} candidate partial maps")
            imgs = images + [h]
            if k + 1 < len(gens) and _extend(G, H, word_trees[k], gens[: k + 1], imgs) is None:
                continue
            rec(k + 1, imgs)

    if G.order == 1:
        return [(0,)] if (not bijective or H.order == 1) else []
    rec(0, [])
    return sorted(results)


def homomorphisms(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> list:
    return _search_homs(G, H, bijective=False, cap=cap)


def automorphisms(G: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> list:
    """The full automorphism group, sorted; the identity comes first."""
    return _search_homs(G, G, bijective=True, cap=cap)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP):
    """An isomorphism G -> H as an image tuple, or ``None``."""
    if G.order != H.order or sorted(G.element_orders) != sorted(H.element_orders):
        return None
    gens = G.generators
    trees = [_bfs_words(G, gens[: k + 1]) for k in range(len(gens))]
    go, ho = G.element_orders, H.element_orders
    cands = [[h for h in range(H.order) if ho[h] == go[g]] for g in gens]
    counter = [0]

    def rec(k, images):
        if k == len(gens):
            phi = _extend(G, H, trees[-1], gens, images)
            if phi is None:
                return None
            m = tuple(phi[x] for x in range(G.order))
            return m if len(set(m)) == H.order else None
        for h in cands[k]:
            counter[0] += 1
            if counter[0] > cap:
                raise BudgetExceeded(f"isomorphism search exceeded {cap} candidate partial maps")
            imgs = images + [h]
            if k + 1 < len(gens) and _extend(G, H, trees[k], gens[: k + 1], imgs) is None:
                continue
            r = rec(k + 1, imgs)
            if r is not None:
                return r
        return None

    if G.order == 1:
        return (0,)
    return rec(0, [])


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> bool:
    return find_isomorphism(G, H, cap) is not None


# ---------------------------------------------------------------- quotients


def quotient(G: FiniteGroup, N: Subgroup, name: str = "") -> tuple:
    """``G/N`` with cosets labelled by their least member; returns (Q, projection)."""
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    label = [-1] * G.order
    reps = []
    m = G.mult
    for x in range(G.order):
        if label[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for n in N.members:
            label[m[x][n]] = k
    mult = tuple(tuple(label[m[a][b]] for b in reps) for a in reps)
    inv = tuple(label[G.inv[a]] for a in reps)
    Q = FiniteGroup(mult, inv, name)
    return Q, GroupHom(G, Q, tuple(label))


def coset_representatives(proj: GroupHom) -> tuple:
    """Least preimage of each element of the target."""
    reps = [None] * proj.target.order
    for x, q in enumerate(proj.map):
        if reps[q] is None:
            reps[q] = x
    return tuple(reps)


def induced_automorphism(proj: GroupHom, phi: Aut) -> Aut:
    """Automorphism of ``G/N`` induced by ``phi`` (which must preserve ``N``)."""
    reps = coset_representatives(proj)
    return tuple(proj.map[phi[r]] for r in reps)


# ---------------------------------------------------------------- automorphism groups


class AutomorphismGroup:
    """Aut(G) as a finite group, with its inner subgroup and outer quotient."""

    def __init__(self, G: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP):
        self.base = G
        self.elements = automorphisms(G, cap)
        self.index = {a: i for i, a in enumerate(self.elements)}
        idx = self.index
        mult = tuple(tuple(idx[compose(a, b)] for b in self.elements) for a in self.elements)
        inv = tuple(idx[invert(a)] for a in self.elements)
        self.group = FiniteGroup(mult, inv, f"Aut({G.name})" if G.name else "Aut")
        inner = sorted({idx[inner_automorphism(G, a)] for a in range(G.order)})
        self.inner = Subgroup(self.group, tuple(inner))
        self.out, self.out_proj = quotient(self.group, self.inner)
        # least element inducing each inner automorphism
        self.inner_witness = {}
        for a in range(G.order):
            self.inner_witness.setdefault(inner_automorphism(G, a), a)

    def __len__(self):
        return len(self.elements)

    def outer_class(self, phi: Aut) -> int:
        return self.out_proj.map[self.index[phi]]

    def is_inner(self, phi: Aut) -> bool:
        return phi in self.inner_witness

    def coset(self, phi: Aut) -> list:
        """All automorphisms in the Inn-coset of ``phi``, sorted."""
        return sorted(compose(self.elements[i], phi) for i in self.inner.members)

    def out_representative(self, k: int) -> Aut:
        """Least automorphism in the outer class ``k``."""
        for i, q in enumerate(self.out_proj.map):
            if q == k:
                return self.elements[i]
        raise IndexError(k)


_AUT_CACHE: dict = {}


def aut_group(G: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> AutomorphismGroup:
    key = G.mult
    A = _AUT_CACHE.get(key)
    if A is None:
        A = AutomorphismGroup(G, cap)
        _AUT_CACHE[key] = A
    return A


@dataclass(frozen=True)
class OuterClasses:
    classes: tuple  # tuple of tuples of automorphisms, ordered by least member
    lookup: dict = field(repr=False, compare=False)

    def coset_of(self, phi: Aut) -> int:
        return self.lookup[phi]

    def __len__(self):
        return len(self.classes)


def outer_classes(G: FiniteGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> OuterClasses:
    A = aut_group(G, cap)
    buckets = {}
    for i, q in enumerate(A.out_proj.map):
        buckets.setdefault(q, []).append(A.elements[i])
    classes = tuple(tuple(sorted(buckets[q])) for q in range(A.out.order))
    lookup = {phi: q for q, cl in enumerate(classes) for phi in cl}
    return OuterClasses(classes, lookup)


# ---------------------------------------------------------------- structure


@dataclass(frozen=True)
class NilpotencyData:
    is_p_group: bool
    is_nilpotent: bool
    descending_central_series: tuple


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def nilpotency_data(G: FiniteGroup, p: int) -> NilpotencyData:
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    W = whole(G)
    series = [W]
    while True:
        nxt = commutator_subgroup(G, series[-1], W)
        if nxt.members == series[-1].members:
            break
        series.append(nxt)
    return NilpotencyData(_is_power_of(G.order, p), series[-1].order == 1, tuple(series))


def semidirect_product(A: FiniteGroup, Gamma: FiniteGroup, phi: Sequence[Aut], name: str = "") -> FiniteGroup:
    """``A x| Gamma`` with (a,s)(b,t) = (a phi_s(b), st); element (a,s) is s*|A| + a."""
    phi = [tuple(p) for p in phi]
    if len(phi) != Gamma.order or phi[0] != A.identity_aut:
        raise NotHomomorphism("phi must assign the identity automorphism to the identity")
    for s in range(Gamma.order):
        if not is_hom_map(A, A, phi[s]) or len(set(phi[s])) != A.order:
            raise NotHomomorphism(f"phi({s}) is not an automorphism")
        for t in range(Gamma.order):
            if compose(phi[s], phi[t]) != phi[Gamma.mult[s][t]]:
                raise NotHomomorphism(f"phi({s}) o phi({t}) != phi({s}*{t})")
    n = A.order
    am, gm = A.mult, Gamma.mult
    mult = []
    for s in range(Gamma.order):
        for a in range(n):
            row = []
            for t in range(Gamma.order):
                for b in range(n):
                    row.append(gm[s][t] * n + am[a][phi[s][b]])
            mult.append(row)
    return make_group(mult, name)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """Element (g, h) is h*|G| + g."""
    return semidirect_product(G, H, [G.identity_aut] * H.order, name)
