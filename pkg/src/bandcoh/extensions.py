"""Group extensions ``1 -> A -> E -> Gamma -> 1`` built from raw multiplication laws.

This module is an independent check on :mod:`bandcoh.h2`: it derives
everything from tables and never calls that module's enumeration or
equivalence code.  Elements of ``A x Gamma`` are indexed ``s * |A| + a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .band import Band, make_band
from .errors import BudgetExceeded, NotSection, ValidationError
from .groups import (
    FiniteGroup,
    GroupHom,
    _bfs_words,
    aut_group,
    make_group,
)

LIFT_CAP = 10**5
PARTIAL_CAP = 5 * 10**6


@dataclass(frozen=True, eq=False)
class Extension:
    group: FiniteGroup
    iota: GroupHom = field(repr=False)
    pi: GroupHom = field(repr=False)

    @property
    def kernel(self) -> FiniteGroup:
        return self.iota.source

    @property
    def gamma(self) -> FiniteGroup:
        return self.pi.target


def _law_table(A: FiniteGroup, G: FiniteGroup, f, g) -> np.ndarray:
    """Table of ``(a,s)(b,t) = (a f_s(b) g_{s,t}, st)``."""
    n, q = A.order, G.order
    T = A.table
    F = np.array(f, dtype=np.int64)
    Gt = np.array(g, dtype=np.int64).reshape(q, q)
    a = np.arange(n)
    table = np.empty((q * n, q * n), dtype=np.int64)
    for s in range(q):
        for t in range(q):
            block = T[T[a[:, None], F[s][a][None, :]], Gt[s, t]]
            table[s * n : (s + 1) * n, t * n : (t + 1) * n] = G.mult[s][t] * n + block
    return table


def _structure_maps(E: FiniteGroup, A: FiniteGroup, G: FiniteGroup) -> tuple:
    n = A.order
    iota = GroupHom(A, E, tuple(range(n)))
    pi = GroupHom(E, G, tuple(x // n for x in range(E.order)))
    return iota, pi


def extension_from_law(A: FiniteGroup, G: FiniteGroup, f, g, name: str = "") -> Extension:
    E = make_group(_law_table(A, G, f, g).tolist(), name)
    iota, pi = _structure_maps(E, A, G)
    return Extension(E, iota, pi)


def extension_from_cocycle(c) -> Extension:
    """The extension realizing a cocycle ``(f, g)`` of a band."""
    B = c.band
    return extension_from_law(B.kernel, B.gamma, c.f, c.g)


def canonical_section(e: Extension) -> tuple:
    """Least preimage of each element of Gamma."""
    sec = [None] * e.gamma.order
    for x, s in enumerate(e.pi.map):
        if sec[s] is None:
            sec[s] = x
    return tuple(sec)


def _check_section(e: Extension, section) -> tuple:
    section = tuple(int(x) for x in section)
    if len(section) != e.gamma.order:
        raise NotSection("section needs one entry per element of Gamma")
    if section[0] != 0:
        raise NotSection("section must send 1 to 1")
    for s, x in enumerate(section):
        if not 0 <= x < e.group.order or e.pi.map[x] != s:
            raise NotSection(f"pi(section({s})) != {s}")
    return section


def _conjugation_on_kernel(e: Extension, x: int) -> tuple:
    E = e.group
    back = {y: i for i, y in enumerate(e.iota.map)}
    return tuple(back[E.mul(x, e.iota.map[a], E.inv[x])] for a in range(e.kernel.order))


def induced_kernel(e: Extension, section=None) -> Band:
    """Band given by conjugation through a section (canonical by default)."""
    section = canonical_section(e) if section is None else _check_section(e, section)
    return make_band(e.gamma, e.kernel, [_conjugation_on_kernel(e, x) for x in section])


def cocycle_from_extension(e: Extension, section, band: Band | None = None):
    """Factor set ``(f, g)`` of an extension relative to a section."""
    from .h2 import make_cocycle  # result type only; no classification is used

    section = _check_section(e, section)
    E, G = e.group, e.gamma
    back = {y: i for i, y in enumerate(e.iota.map)}
    f = [_conjugation_on_kernel(e, x) for x in section]
    q = G.order
    g = []
    for s in range(q):
        for t in range(q):
            y = E.mul(section[s], section[t], E.inv[section[G.mult[s][t]]])
            if y not in back:
                raise NotSection("section products leave the kernel")
            g.append(back[y])
    if band is None:
        band = make_band(G, e.kernel, f)
    return make_cocycle(band, f, g)


def splits(e: Extension):
    """A homomorphic section, or None."""
    G, E = e.gamma, e.group
    if G.order == 1:
        return (0,)
    gens = G.generators
    tree = _bfs_words(G, gens)
    fibres = [[x for x in range(E.order) if e.pi.map[x] == g] for g in gens]
    for imgs in product(*fibres):
        sec = [None] * G.order
        sec[0] = 0
        for y, x, i in tree[1:]:
            sec[y] = E.mult[sec[x]][imgs[i]]
        if any(e.pi.map[sec[s]] != s for s in range(G.order)):
            continue
        if all(sec[G.mult[x][g]] == E.mult[sec[x]][imgs[i]] for x in range(G.order) for i, g in enumerate(gens)):
            return tuple(sec)
    return None


# ---------------------------------------------------------------------- the oracle


def _candidate_laws(A: FiniteGroup, G: FiniteGroup, f) -> np.ndarray:
    """Normalized ``g`` for which the law with ``f`` is associative on the pruning triples.

    The triples checked are ``((1,s),(1,t),(c,u))`` for every ``c``; any subset
    of associativity conditions is a sound filter.
    """
    q, n = G.order, A.order
    T = A.table
    F = np.array(f, dtype=np.int64)
    m = G.mult
    if q == 1:
        return np.zeros((1, 1), dtype=np.int64)
    c = np.arange(n)
    pairs = [(s, t) for s in range(1, q) for t in range(1, q)]
    step = {p: k for k, p in enumerate(pairs)}
    checks = [[] for _ in pairs]
    for s, t, u in product(range(1, q), repeat=3):
        need = [p for p in ((s, t), (m[s][t], u), (t, u), (s, m[t][u])) if 0 not in p]
        checks[max(step[p] for p in need)].append((s, t, u))
    rows = np.zeros((1, q * q), dtype=np.int64)
    for k, (s, t) in enumerate(pairs):
        col = s * q + t
        cnt = len(rows)
        rows = np.repeat(rows, n, axis=0)
        rows[:, col] = np.tile(np.arange(n), cnt)
        for s1, t1, u1 in checks[k]:
            st, tu = m[s1][t1], m[t1][u1]
            # ((1,s)(1,t))(c,u) = (g_st f_st(c) g_{st,u}, stu)
            left = T[T[rows[:, [s1 * q + t1]], F[st][c][None, :]], rows[:, [st * q + u1]]]
            # (1,s)((1,t)(c,u)) = (f_s(f_t(c) g_tu) g_{s,tu}, stu)
            inner = T[F[t1][c][None, :], rows[:, [t1 * q + u1]]]
            right = T[F[s1][inner], rows[:, [s1 * q + tu]]]
            rows = rows[(left == right).all(axis=1)]
        if len(rows) > PARTIAL_CAP:
            raise BudgetExceeded(f"law search exceeded {PARTIAL_CAP} partial candidates")
    return rows


def _normalized_hs(A: FiniteGroup, q: int) -> np.ndarray:
    hs = np.array(list(product(range(A.order), repeat=q - 1)), dtype=np.int64).reshape(A.order ** (q - 1), q - 1)
    return np.concatenate([np.zeros((len(hs), 1), dtype=np.int64), hs], axis=1)


def _transport_keys(A: FiniteGroup, G: FiniteGroup, table: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """Factor sets of the tables transported by ``phi_h(a,s) = (a h_s, s)``, one row per ``h``.

    The transported product is ``x *' y = phi(phi^-1(x) phi^-1(y))``; ``f'_s(b)`` is
    read off ``(1,s) *' (b,1)`` and ``g'_{s,t}`` off ``(1,s) *' (1,t)``.  Rows are
    ``[f'_0 .. f'_{q-1} | g'_{0,0} .. g'_{q-1,q-1}]``.
    """
    n, q = A.order, G.order
    T, I = A.table, A.inv_array
    out = np.empty((len(hs), q * n + q * q), dtype=np.int64)
    b = np.arange(n)
    # phi^-1(1, s) = (h_s^-1, s);  phi^-1(b, 1) = (b, 1)
    pre = [s * n + I[hs[:, s]] for s in range(q)]
    for s in range(q):
        p = table[pre[s][:, None], b[None, :]]
        out[:, s * n : (s + 1) * n] = T[p % n, hs[:, [s]]]
        for t in range(q):
            p = table[pre[s], pre[t]]
            out[:, q * n + s * q + t] = T[p % n, hs[:, G.mult[s][t]]]
    return out


@dataclass(frozen=True, eq=False)
class ExtensionClass:
    index: int
    extension: Extension
    f: tuple
    g: tuple
    splitting: tuple | None

    @property
    def splits(self) -> bool:
        return self.splitting is not None


@dataclass(frozen=True, eq=False)
class ExtensionClasses:
    classes: tuple
    lookup: dict = field(repr=False)
    law_count: int = 0

    def __len__(self):
        return len(self.classes)

    def class_index(self, f, g) -> int:
        return self.lookup[_law_key(f, g)]


def _law_key(f, g) -> bytes:
    return np.concatenate([np.asarray(f, dtype=np.int64).ravel(), np.asarray(g, dtype=np.int64)]).tobytes()


def _kappa_cosets(A: FiniteGroup, kappa_section) -> list:
    AG = aut_group(A)
    return [AG.coset(tuple(fs)) for fs in kappa_section]


def enumerate_extensions(gamma: FiniteGroup, kernel: FiniteGroup, kappa_section) -> ExtensionClasses:
    """Extension classes of ``gamma`` by ``kernel`` inducing the outer action of ``kappa_section``.

    ``kappa_section`` is any per-element list of automorphisms whose outer
    classes define ``kappa``; the conjugation action of every extension found
    is compared against it class by class.
    """
    A, G = kernel, gamma
    q, n = G.order, A.order
    cosets = _kappa_cosets(A, kappa_section)
    ident = tuple(range(n))
    if ident not in cosets[0]:
        raise ValidationError("kappa must be trivial at the identity")
    total = 1
    for c in cosets[1:]:
        total *= len(c)
    if total > LIFT_CAP:
        raise BudgetExceeded(f"{total} lifts exceed the oracle budget")
    blocks = []
    for combo in product(*cosets[1:]):
        f = np.array((ident,) + combo, dtype=np.int64).ravel()
        rows = _candidate_laws(A, G, (ident,) + combo)
        blocks.append(np.concatenate([np.broadcast_to(f, (len(rows), q * n)), rows], axis=1))
    laws = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, q * n + q * q), dtype=np.int64)
    laws = laws[np.lexsort(laws.T[::-1])]
    hs = _normalized_hs(A, q)
    AG = aut_group(A)
    kappa_out = [AG.outer_class(tuple(fs)) for fs in kappa_section]
    lookup: dict = {}
    found = []
    for row in laws:
        if row.tobytes() in lookup:
            continue
        f = tuple(tuple(int(v) for v in row[s * n : (s + 1) * n]) for s in range(q))
        g = tuple(int(v) for v in row[q * n :])
        ext = extension_from_law(A, G, f, g)  # full group-axiom validation
        orbit = _transport_keys(A, G, ext.group.table, hs)
        keys = {o.tobytes() for o in orbit}
        if row.tobytes() not in keys:
            raise AssertionError("transport orbit misses its own law")
        if any(AG.outer_class(tuple(_conj_via_table(ext, s * n, n))) != kappa_out[s] for s in range(q)):
            continue
        k = len(found)
        for key in keys:
            lookup[key] = k
        # laws are visited in sorted order, so this one is least in its orbit
        found.append((f, g, ext))
    out = tuple(ExtensionClass(i, ext, f, g, splits(ext)) for i, (f, g, ext) in enumerate(found))
    return ExtensionClasses(out, lookup, len(laws))


def _conj_via_table(e: Extension, x: int, n: int) -> list:
    E = e.group
    return [E.mult[E.mult[x][a]][E.inv[x]] for a in range(n)]
