"""Finite abelian groups as integer lattices.

A finite abelian group is presented as ``Z^r / diag(d)``.  Subgroups of
cochain groups are then lattices ``L`` with ``E Z^N <= L <= Z^N`` for the
exponent ``E``; they are kept in Hermite normal form with every entry
reduced mod ``E``, which gives a unique residue for each coset.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product
from math import gcd

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .groups import FiniteGroup


def _egcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lcm(values) -> int:
    r = 1
    for v in values:
        r = r * v // gcd(r, v)
    return r


class ModLattice:
    """A full-rank lattice in ``Z^n`` containing ``modulus * Z^n``."""

    def __init__(self, n: int, modulus: int):
        self.n = n
        self.E = modulus
        self.rows = np.zeros((n, n), dtype=np.int64)
        self.diag = np.full(n, modulus, dtype=np.int64)
        for i in range(n):
            self.rows[i, i] = modulus
        self._normal = True

    def add(self, v) -> None:
        E = self.E
        v = np.asarray(v, dtype=np.int64) % E
        rows, diag = self.rows, self.diag
        for i in range(self.n):
            vi = int(v[i])
            if vi == 0:
                continue
            d = int(diag[i])
            if vi % d == 0:
                v = (v - (vi // d) * rows[i]) % E
                continue
            g, x, y = _egcd(d, vi)
            b = rows[i].copy()
            new_b = (x * b + y * v) % E
            new_b[i] = g
            v = ((vi // g) * b - (d // g) * v) % E
            rows[i] = new_b
            diag[i] = g
            self._normal = False
        # whatever is left of v is zero

    def add_many(self, vs) -> None:
        for v in vs:
            self.add(v)

    def _normalize(self):
        if self._normal:
            return
        E = self.E
        rows, diag = self.rows, self.diag
        # a row with diagonal d also contributes (E/d) * row, which has zero
        # diagonal entry; feed those back in until stable
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                d = int(diag[i])
                if d == E:
                    continue
                extra = ((E // d) * rows[i]) % E
                extra[i] = 0
                if extra.any():
                    before = diag.copy()
                    self.add(extra)
                    if (before != diag).any():
                        changed = True
        for j in range(self.n):
            d = int(diag[j])
            for i in range(j):
                q = int(rows[i, j]) // d
                if q:
                    rows[i] = (rows[i] - q * rows[j]) % E
                    rows[i, i] = diag[i]
        self._normal = True

    def reduce(self, v) -> np.ndarray:
        """Canonical residue of ``v`` modulo the lattice."""
        self._normalize()
        E = self.E
        v = np.asarray(v, dtype=np.int64) % E
        rows, diag = self.rows, self.diag
        for i in range(self.n):
            q = int(v[i]) // int(diag[i])
            if q:
                v = (v - q * rows[i]) % E
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    @property
    def index(self) -> int:
        """``|Z^n / L|``"""
        self._normalize()
        r = 1
        for d in self.diag:
            r *= int(d)
        return r

    def basis(self) -> np.ndarray:
        self._normalize()
        return self.rows.copy()


def lattice_from_generators(n: int, modulus: int, gens) -> ModLattice:
    L = ModLattice(n, modulus)
    L.add_many(gens)
    L._normalize()
    return L


def preimage_lattice(matrix: np.ndarray, target: ModLattice, relations: np.ndarray, modulus: int) -> ModLattice:
    """``{x in Z^m : matrix @ x in target}`` for a map ``Z^m -> Z^k``.

    ``relations`` holds generators of a lattice in ``Z^m`` known to lie in
    the preimage (e.g. the presentation relations of the domain)."""
    k, m = matrix.shape
    E = modulus
    big = ModLattice(k + m, E)
    tb = target.basis()
    for row in tb:
        big.add(np.concatenate([row, np.zeros(m, dtype=np.int64)]))
    for j in range(m):
        col = matrix[:, j]
        e = np.zeros(m, dtype=np.int64)
        e[j] = 1
        big.add(np.concatenate([col, e]))
    big._normalize()
    ker = ModLattice(m, E)
    for i in range(k, k + m):
        ker.add(big.rows[i, k:])
    ker.add_many(relations)
    ker._normalize()
    return ker


class AbelianStructure:
    """Coordinates on a finite abelian group: ``G = (+) <b_i>`` with ord(b_i) = d_i."""

    def __init__(self, G: FiniteGroup):
        if not G.is_abelian:
            raise ValidationError("group is not abelian")
        self.group = G
        self.basis, self.orders = _abelian_basis(G)
        self.rank = len(self.basis)
        self.exponent = _lcm(self.orders) if self.orders else 1
        self._coords = {}
        self._elem = {}
        for c in product(*[range(d) for d in self.orders]):
            x = 0
            for b, k in zip(self.basis, c):
                x = G.mult[x][G.power(b, k)]
            self._coords[x] = c
            self._elem[c] = x
        assert len(self._coords) == G.order

    def coords(self, x: int) -> tuple:
        return self._coords[x]

    def element(self, c) -> int:
        return self._elem[tuple(int(ci) % d for ci, d in zip(c, self.orders))]

    @cached_property
    def coord_array(self) -> np.ndarray:
        return np.array([self._coords[x] for x in range(self.group.order)], dtype=np.int64).reshape(self.group.order, self.rank)

    def aut_matrix(self, phi) -> np.ndarray:
        """Integer matrix M with coords(phi(x)) = M @ coords(x) (mod orders)."""
        M = np.zeros((self.rank, self.rank), dtype=np.int64)
        for i, b in enumerate(self.basis):
            M[:, i] = self._coords[phi[b]]
        return M


def _abelian_basis(G: FiniteGroup):
    """Basis of cyclic prime-power summands, found by primary decomposition."""
    if G.order == 1:
        return [], []
    n = G.order
    orders = G.element_orders
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    basis, ords = [], []
    for p in primes:
        part = [x for x in range(n) if _is_p_power(orders[x], p)]
        target = len(part)
        found = _search_basis(G, part, target)
        if found is None:
            raise ValidationError("failed to decompose abelian group")
        for x in found:
            basis.append(x)
            ords.append(orders[x])
    return basis, ords


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def _search_basis(G, part, target, budget=10**6):
    orders = G.element_orders
    cands = sorted((x for x in part if x != 0), key=lambda x: (-orders[x], x))
    count = [0]

    def span(gens):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mult[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def rec(chosen, size, start):
        if size == target:
            return list(chosen)
        cur = span(chosen)
        for idx in range(start, len(cands)):
            y = cands[idx]
            count[0] += 1
            if count[0] > budget:
                raise BudgetExceeded("abelian basis search")
            if y in cur:
                continue
            if len(span(chosen + [y])) != size * orders[y]:
                continue
            r = rec(chosen + [y], size * orders[y], idx + 1)
            if r is not None:
                return r
        return None

    return rec([], 1, 0)
