from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from oracles import abelian_coboundary, brute_cohomology_order
from bandcoh.catalog import by_name, cyclic
from bandcoh.cohomology import (
    AbelianCochain,
    coboundary,
    cochain_from_function,
    coprime_average_primitive,
    exact_sequence_report,
    h1_nonabelian,
    h_n,
    is_normalized,
    make_gamma_group,
    make_gamma_module,
    one_cocycle_transform,
    quotient_gamma_group,
    trivial_module,
    twisting_report,
    z1_nonabelian,
)
from bandcoh.errors import NotCocycle, NotHomomorphism, ValidationError
from bandcoh.groups import aut_group, center, homomorphisms


def modules(gamma_names, carrier_names, per_pair=None):
    out = []
    build = make_gamma_module if all(by_name(a).is_abelian for a in carrier_names) else make_gamma_group
    for gn in gamma_names:
        G = by_name(gn)
        for an in carrier_names:
            A = by_name(an)
            AG = aut_group(A)
            homs = homomorphisms(G, AG.group)
            for phi in homs[:per_pair]:
                out.append(build(G, A, [AG.elements[i] for i in phi]))
    return out


SMALL = modules(["C2", "C3", "V4", "C4"], ["C2", "C3", "C4", "V4"], per_pair=4)


def _id(M):
    return f"{M.gamma.order}-{M.carrier.order}-" + "".join(str(a[1] if len(a) > 1 else 0) for a in M.action)


@pytest.mark.parametrize("M", SMALL, ids=_id)
def test_h1_matches_brute_force(M):
    assert h_n(M, 1).order == brute_cohomology_order(M, 1)


@pytest.mark.parametrize("M", [M for M in SMALL if M.gamma.order * M.carrier.order <= 12], ids=_id)
def test_h2_matches_brute_force(M):
    assert h_n(M, 2).order == brute_cohomology_order(M, 2)


@pytest.mark.parametrize("M", SMALL, ids=_id)
def test_h0_is_fixed_points(M):
    assert h_n(M, 0).order == brute_cohomology_order(M, 0)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_trivial_cyclic_periodicity(m, n):
    # H^k(C_m, Z/n) = Z/gcd(m, n) for k >= 1 with trivial action
    M = trivial_module(cyclic(m), cyclic(n))
    d = gcd(m, n)
    assert [h_n(M, k).order for k in (1, 2, 3)] == [d, d, d]


def test_inversion_module_c2():
    # C2 acting on C4 by inversion: H^1 = ker N / (s-1)M = C2, H^2 = M^s / NM = C2
    M = make_gamma_module(cyclic(2), cyclic(4), [(0, 1, 2, 3), (0, 3, 2, 1)])
    assert (h_n(M, 0).order, h_n(M, 1).order, h_n(M, 2).order, h_n(M, 3).order) == (2, 2, 2, 2)


@pytest.mark.parametrize("M", modules(["C2", "C4", "V4", "S3"], ["C3", "C5", "C2"], per_pair=3), ids=_id)
def test_coprime_vanishing(M):
    if gcd(M.gamma.order, M.carrier.order) != 1:
        return
    for n in (1, 2, 3):
        assert h_n(M, n).order == 1


@pytest.mark.parametrize("M", [M for M in modules(["C2", "C3", "S3"], ["C3", "C5", "C4"]) if gcd(M.gamma.order, M.carrier.order) == 1], ids=_id)
def test_coprime_primitive(M):
    for n in (1, 2, 3):
        for rep in h_n(M, n).representatives:
            z = rep
            k = coprime_average_primitive(z)
            assert coboundary(k).values == z.values


def test_coboundary_direct_formula_matches_oracle():
    for M in SMALL[:10]:
        for n in (1, 2):
            q = M.gamma.order
            for vals in list(product(range(M.carrier.order), repeat=(q - 1) ** n))[:20]:
                keys = [t for t in product(range(q), repeat=n) if 0 not in t]
                d = dict(zip(keys, vals))
                c = cochain_from_function(M, n, lambda *a: d.get(a, 0))
                ref = abelian_coboundary(M, n, d)
                assert coboundary(c).values == tuple(ref[t] for t in product(range(q), repeat=n + 1))


@given(st.sampled_from(SMALL), st.data())
def test_dd_is_zero(M, data):
    q = M.gamma.order
    n = data.draw(st.sampled_from([0, 1, 2]))
    vals = {t: data.draw(st.integers(0, M.carrier.order - 1)) for t in product(range(q), repeat=n) if 0 not in t}
    c = cochain_from_function(M, n, lambda *a: vals.get(a, 0))
    dc = coboundary(c)
    assert is_normalized(dc)
    assert all(v == 0 for v in coboundary(dc).values)
    if n < 3:
        assert h_n(M, n + 1).is_zero(dc)


@given(st.sampled_from([M for M in SMALL if M.gamma.order <= 3]), st.data())
def test_class_key_is_coboundary_invariant(M, data):
    q = M.gamma.order
    H = h_n(M, 2)
    z = data.draw(st.sampled_from(H.representatives))
    vals = {(t,): data.draw(st.integers(0, M.carrier.order - 1)) for t in range(1, q)}
    b = coboundary(cochain_from_function(M, 1, lambda *a: vals.get(a, 0)))
    A = M.carrier
    moved = AbelianCochain(M, 2, tuple(A.mult[x][y] for x, y in zip(z.values, b.values)))
    assert H.key(moved) == H.key(z)


def test_key_rejects_non_cocycle():
    M = trivial_module(cyclic(2), cyclic(2))
    # s -> 1 is a homomorphism, (s, t) -> 1 on the non-identity pair is not a cocycle for C2
    assert h_n(M, 1).key(AbelianCochain(M, 1, (0, 1))) is not None
    M4 = trivial_module(cyclic(3), cyclic(3))
    with pytest.raises(NotCocycle):
        h_n(M4, 1).key(AbelianCochain(M4, 1, (0, 1, 1)))
    assert h_n(M, 2).is_zero(AbelianCochain(M, 2, (0, 0, 0, 0)))


def test_action_validation():
    with pytest.raises(NotHomomorphism):
        make_gamma_module(cyclic(3), cyclic(4), [(0, 1, 2, 3), (0, 3, 2, 1), (0, 3, 2, 1)])
    with pytest.raises(ValidationError):
        make_gamma_module(cyclic(2), by_name("S3"), [tuple(range(6))] * 2)


# ---------------------------------------------------------------------- nonabelian H^1


def test_h1_trivial_action_counts_involution_classes():
    # trivial action of C2: H^1 = conjugacy classes of elements with x^2 = 1
    S3 = by_name("S3")
    assert h1_nonabelian(make_gamma_group(cyclic(2), S3, [tuple(range(6))] * 2)).order == 2
    D4 = by_name("D4")
    assert h1_nonabelian(make_gamma_group(cyclic(2), D4, [tuple(range(8))] * 2)).order == 4
    Q8 = by_name("Q8")
    assert h1_nonabelian(make_gamma_group(cyclic(2), Q8, [tuple(range(8))] * 2)).order == 2


def test_h1_trivial_class_first():
    for M in modules(["C2", "C3"], ["S3", "D4"], per_pair=3):
        H = h1_nonabelian(M)
        assert H.representatives[0] == (0,) * M.gamma.order
        assert H.class_of((0,) * M.gamma.order) == 0


@given(st.sampled_from(modules(["C2", "V4"], ["S3", "D4", "Q8"], per_pair=3)), st.data())
def test_h1_classes_closed_under_transform(M, data):
    H = h1_nonabelian(M)
    a = data.draw(st.sampled_from(H.cocycles))
    m = data.draw(st.integers(0, M.carrier.order - 1))
    b = one_cocycle_transform(M, a, m)
    assert b in H.lookup and H.class_of(b) == H.class_of(a)


def test_z1_of_abelian_matches_lattice():
    for M in SMALL:
        assert len(z1_nonabelian(M)) == h_n(M, 1).order * len(
            {tuple(M.carrier.mult[M.carrier.inv[m]][a[m]] for a in M.action) for m in range(M.carrier.order)}
        )


# ---------------------------------------------------------------------- exact sequence and twisting


GROUPS_WITH_CENTER = [M for M in (
    make_gamma_group(cyclic(2), by_name(n), [AG.elements[i] for i in phi])
    for n in ("D4", "Q8", "C4", "S3")
    for AG in [aut_group(by_name(n))]
    for phi in homomorphisms(cyclic(2), AG.group)
)]


@pytest.mark.parametrize("M", GROUPS_WITH_CENTER, ids=lambda M: f"{M.carrier.order}-{M.action[1]}")
def test_exact_sequence(M):
    report = exact_sequence_report(M, center(M.carrier))
    assert all(report.values()), report


@pytest.mark.parametrize("M", GROUPS_WITH_CENTER, ids=lambda M: f"{M.carrier.order}-{M.action[1]}")
def test_twisting_every_class(M):
    Z = center(M.carrier)
    Q, _ = quotient_gamma_group(M, Z)
    for P in h1_nonabelian(Q).representatives:
        report = twisting_report(M, Z, P)
        assert all(report.values()), (P, report)


def test_twisting_rejects_non_cocycle():
    S3 = by_name("S3")
    M = make_gamma_group(cyclic(2), S3, [tuple(range(6))] * 2)
    Z = center(S3)
    Q, _ = quotient_gamma_group(M, Z)
    bad = next(p for p in product(range(Q.carrier.order), repeat=2) if p[0] == 0 and p not in h1_nonabelian(Q).lookup)
    with pytest.raises(NotCocycle):
        twisting_report(M, Z, bad)
