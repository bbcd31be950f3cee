import pytest
from hypothesis import given, strategies as st

from bandcoh.band import (
    band_from_outer,
    band_isomorphic,
    center_module,
    count_lifts,
    homomorphic_lifts,
    is_band_iso,
    is_representable,
    kappa_is_homomorphism,
    lifts_of_kappa,
    make_band,
    quotient_band,
    transport_band,
)
from bandcoh.catalog import by_name, cyclic
from bandcoh.errors import NotOuterHomomorphism, ValidationError
from bandcoh.groups import aut_group, center, compose, find_isomorphism, invert, is_hom_map
from bandcoh.sweep import kernel_cases

SMALL_CASES = [c for c in kernel_cases(4, 8) if c.kernel_id in ("C4", "V4", "S3", "D4", "Q8", "C4xC2")]


def test_inversion_band():
    B = make_band(cyclic(2), cyclic(4), [(0, 1, 2, 3), (0, 3, 2, 1)])
    assert B.kappa == (0, 1)
    assert kappa_is_homomorphism(B)
    assert count_lifts(B) == 1
    assert homomorphic_lifts(B) == [B.section]


def test_rejects_non_outer_homomorphism():
    # C3 -> Out(C4) = C2 has no nontrivial homomorphism
    with pytest.raises(NotOuterHomomorphism, match=r"\(s,t\)"):
        make_band(cyclic(3), cyclic(4), [(0, 1, 2, 3), (0, 3, 2, 1), (0, 1, 2, 3)])
    with pytest.raises(NotOuterHomomorphism):
        make_band(cyclic(2), cyclic(4), [(0, 3, 2, 1), (0, 3, 2, 1)])
    with pytest.raises(NotOuterHomomorphism):
        make_band(cyclic(2), cyclic(4), [(0, 1, 2, 3), (0, 2, 1, 3)])


def test_inner_section_gives_trivial_kappa():
    S3 = by_name("S3")
    AG = aut_group(S3)
    B = make_band(cyclic(2), S3, [tuple(range(6)), AG.elements[3]])
    assert B.kappa == (0, 0)


@pytest.mark.parametrize("case", SMALL_CASES, ids=lambda c: f"{c.gamma_id}-{c.kernel_id}-{c.kappa_index}")
def test_center_module_independent_of_lift(case):
    B = case.band
    ref = center_module(B).action
    for f in list(lifts_of_kappa(B))[:50]:
        assert center_module(make_band(B.gamma, B.kernel, f)).action == ref


@pytest.mark.parametrize("case", SMALL_CASES, ids=lambda c: f"{c.gamma_id}-{c.kernel_id}-{c.kappa_index}")
def test_homomorphic_lifts_are_lifts(case):
    B = case.band
    lifts = homomorphic_lifts(B)
    assert lifts == sorted(set(lifts))
    G = B.gamma
    for f in lifts:
        assert B.lifts_kappa(f)
        assert all(compose(f[s], f[t]) == f[G.mult[s][t]] for s in range(G.order) for t in range(G.order))
    brute = [f for f in lifts_of_kappa(B) if all(compose(f[s], f[t]) == f[G.mult[s][t]] for s in range(G.order) for t in range(G.order))]
    assert sorted(brute) == lifts
    assert (is_representable(B) is not None) == bool(lifts)


def test_lift_count_frozen():
    # Out(D4) = C2 and Inn(D4) = V4: a lift chooses one of 4 automorphisms per non-identity element
    for case in kernel_cases(4, 8):
        if case.gamma_id == "V4" and case.kernel_id == "D4":
            assert count_lifts(case.band) == 4**3


def test_quotient_band_by_center():
    B = band_from_outer(cyclic(2), by_name("D4"), [0, 1])
    Bq, proj = quotient_band(B, center(B.kernel))
    assert Bq.kernel.order == 4 and Bq.kernel.is_abelian
    assert is_hom_map(B.kernel, Bq.kernel, proj.map)


@given(st.sampled_from(SMALL_CASES), st.data())
def test_transport_gives_isomorphic_band(case, data):
    B = case.band
    AG = aut_group(B.kernel)
    beta = data.draw(st.sampled_from(AG.elements))
    B2 = transport_band(B, B.kernel, beta)
    assert is_band_iso(B, B2, beta)
    iso = band_isomorphic(B, B2)
    assert iso is not None and is_band_iso(B, B2, iso.alpha)


def test_band_isomorphism_requires_same_gamma():
    B1 = band_from_outer(cyclic(2), cyclic(4), [0, 1])
    B2 = band_from_outer(cyclic(3), cyclic(4), [0, 0, 0])
    with pytest.raises(ValidationError):
        band_isomorphic(B1, B2)


def test_distinct_kappa_not_isomorphic():
    B1 = band_from_outer(cyclic(2), cyclic(4), [0, 0])
    B2 = band_from_outer(cyclic(2), cyclic(4), [0, 1])
    assert band_isomorphic(B1, B2) is None
    # the same band on a relabelled copy of C4
    C4 = cyclic(4)
    Q = by_name("C4")
    alpha = find_isomorphism(C4, Q)
    B3 = transport_band(B2, Q, alpha)
    assert is_band_iso(B2, B3, alpha)
    assert is_band_iso(B3, B2, invert(alpha))
