import random

import pytest
from hypothesis import given, strategies as st

from oracles import brute_h2
from bandcoh.band import (
    abelianization,
    as_gamma_group,
    band_from_outer,
    center_module,
    homomorphic_lifts,
    is_representable,
    make_band,
)
from bandcoh.catalog import by_name, cyclic, dihedral
from bandcoh.cohomology import AbelianCochain, connecting_delta, h1_nonabelian, h_n, quotient_gamma_group
from bandcoh.errors import ConditionFailed, HypothesisViolated, NotCocycle
from bandcoh.extensions import extension_from_cocycle
from bandcoh.groups import (
    aut_group,
    center,
    compose,
    inner_automorphism,
    is_isomorphic,
    make_hom,
    make_subgroup,
    quotient,
    subgroup_as_group,
)
from bandcoh.h2 import (
    Cocycle,
    ab2,
    center_action,
    central_action_report,
    equivalent,
    h2_set,
    inner_form_report,
    is_cocycle,
    lift_band_along,
    lift_representability_transfer,
    make_cocycle,
    normalize,
    obstruction,
    random_defect_data,
    representability_nilpotent,
    transform,
)
from bandcoh.sweep import kernel_cases

ORACLE_CASES = [
    c
    for c in kernel_cases(4, 8)
    if c.gamma_id in ("C1", "C2") or (c.gamma_id == "C3" and by_name(c.kernel_id).order <= 4) or by_name(c.kernel_id).order <= 3
]
SMALL = [c for c in kernel_cases(4, 8) if c.gamma_id in ("C2", "C3", "C4", "V4") and c.kernel_id in ("C4", "V4", "S3", "D4", "Q8")]


def _id(c):
    return f"{c.gamma_id}-{c.kernel_id}-{c.kappa_index}"


def inversion_band():
    return make_band(cyclic(2), cyclic(4), [(0, 1, 2, 3), (0, 3, 2, 1)])


def test_inversion_benchmark():
    B = inversion_band()
    H = h2_set(B)
    assert H.order == 2
    assert len(H.neutral_indices) == 1
    groups = {c.neutral: extension_from_cocycle(c.representative).group for c in H.classes}
    assert is_isomorphic(groups[True], by_name("D4"))
    assert is_isomorphic(groups[False], by_name("Q8"))


@pytest.mark.parametrize("case", ORACLE_CASES, ids=_id)
def test_counts_match_exhaustive_search(case):
    B = case.band
    H = h2_set(B)
    assert (H.order, len(H.neutral_indices)) == brute_h2(B.gamma, B.kernel, B.section)


def test_frozen_counts():
    # H^2(C2, A) with trivial action is A / A^2 for abelian A; nonabelian values from exhaustive search
    expect = {
        ("C2", "C2", 0): (2, 1),
        ("C2", "V4", 0): (4, 1),
        ("C2", "C2^3", 0): (8, 1),
        ("C2", "D4", 0): (2, 2),
        ("C2", "Q8", 0): (2, 2),
        ("V4", "V4", 0): (64, 1),
        ("V4", "D4", 0): (8, 7),
        ("V4", "Q8", 0): (8, 5),
        ("C3", "C3", 0): (3, 1),
        ("C2", "S3", 0): (1, 1),
    }
    got = {}
    for c in kernel_cases(4, 8):
        key = (c.gamma_id, c.kernel_id, c.kappa_index)
        if key in expect:
            H = h2_set(c.band)
            got[key] = (H.order, len(H.neutral_indices))
    assert got == expect


def test_non_realizable_kernel():
    # an outer action of C2 on the dihedral group of order 16 with no extension
    D8 = dihedral(8)
    AG = aut_group(D8)
    B = band_from_outer(cyclic(2), D8, [0, 3])
    assert AG.out.order == 4
    ob = obstruction(B)
    assert not ob.is_zero
    assert h2_set(B).order == 0
    assert homomorphic_lifts(B) == []


def test_is_cocycle_reports_reason():
    B = inversion_band()
    assert is_cocycle(B, B.section, (0, 0, 0, 0))
    rep = is_cocycle(B, B.section, (0, 0, 0, 1))
    assert not rep and "g" in rep.reason
    rep = is_cocycle(B, [(0, 1, 2, 3), (0, 1, 2, 3)], (0, 0, 0, 0))
    assert not rep and "kappa" in rep.reason
    with pytest.raises(NotCocycle):
        make_cocycle(B, B.section, (0, 0, 0, 1))


def test_normalize_unnormalized_cocycle():
    B = inversion_band()
    base = Cocycle(B, B.section, (0, 0, 0, 2))
    raw = transform(base, (1, 0))  # h_1 = 1 breaks normalization
    assert raw.g[0] != 0
    c, h = normalize(B, raw.f, raw.g)
    assert is_cocycle(B, c.f, c.g)
    assert h2_set(B).class_index(c) == h2_set(B).class_index(base)


@given(st.sampled_from(SMALL), st.data())
def test_transform_preserves_class(case, data):
    B = case.band
    H = h2_set(B)
    if H.order == 0:
        return
    cls = data.draw(st.sampled_from(H.classes))
    n, q = B.kernel.order, B.gamma.order
    h = [0] + [data.draw(st.integers(0, n - 1)) for _ in range(q - 1)]
    d = transform(cls.representative, h)
    assert is_cocycle(B, d.f, d.g)
    assert H.class_index(d) == cls.index
    w = equivalent(B, cls.representative, d)
    assert w is not None and transform(cls.representative, w) == d


@given(st.sampled_from(SMALL), st.data())
def test_transform_composes(case, data):
    B = case.band
    H = h2_set(B)
    if H.order == 0:
        return
    c = H.classes[0].representative
    A, q = B.kernel, B.gamma.order
    h = [0] + [data.draw(st.integers(0, A.order - 1)) for _ in range(q - 1)]
    k = [0] + [data.draw(st.integers(0, A.order - 1)) for _ in range(q - 1)]
    kh = [A.mult[k[s]][h[s]] for s in range(q)]
    assert transform(transform(c, h), k) == transform(c, kh)


@pytest.mark.parametrize("case", SMALL, ids=_id)
def test_distinct_classes_not_equivalent(case):
    B = case.band
    cls = h2_set(B).classes
    for a in cls[:4]:
        for b in cls[:4]:
            assert (equivalent(B, a.representative, b.representative) is not None) == (a.index == b.index)


@pytest.mark.parametrize("case", SMALL, ids=_id)
def test_obstruction_independent_of_choices(case):
    B = case.band
    rng = random.Random(case.kappa_index)
    ref = obstruction(B).key
    for _ in range(5):
        f, g = random_defect_data(B, rng)
        assert obstruction(B, f, g).key == ref


@pytest.mark.parametrize("case", SMALL, ids=_id)
def test_central_action_free_transitive(case):
    r = central_action_report(case.band)
    assert r["free"] and r["transitive"] and r["h2"] == r["h2_center"]


def test_ab2_perfect_kernel_is_zero():
    A5 = by_name("A5")
    for kappa in ([0, 0], [0, 1]):
        B = band_from_outer(cyclic(2), A5, kappa)
        M, _ = abelianization(B)
        assert M.carrier.order == 1
        classes = h2_set(B).classes
        assert classes and all(ab2(B, c).is_zero for c in classes)


@pytest.mark.parametrize("case", [c for c in SMALL if by_name(c.kernel_id).is_abelian], ids=_id)
def test_ab2_bijective_for_abelian(case):
    B = case.band
    H = h2_set(B)
    images = {ab2(B, c).index for c in H.classes}
    assert len(images) == H.order == h_n(abelianization(B)[0], 2).order


def test_representability_nilpotent_q8_over_c3():
    Q8 = by_name("Q8")
    AG = aut_group(Q8)
    k = next(k for k in range(AG.out.order) if k and AG.out.mult[AG.out.mult[k][k]][k] == 0)
    B = band_from_outer(cyclic(3), Q8, [0, k, AG.out.mult[k][k]])
    f, h = representability_nilpotent(B)
    G = B.gamma
    assert all(compose(f[s], f[t]) == f[G.mult[s][t]] for s in range(3) for t in range(3))
    assert B.lifts_kappa(f)
    assert h2_set(B).order == 1 and len(h2_set(B).neutral_indices) == 1


def test_representability_hypotheses():
    with pytest.raises(HypothesisViolated):
        representability_nilpotent(band_from_outer(cyclic(2), cyclic(4), [0, 1]))
    with pytest.raises(HypothesisViolated):
        representability_nilpotent(band_from_outer(cyclic(2), by_name("S3"), [0, 0]))


# ---------------------------------------------------------------------- lifting along a map


def _s3_setup(gamma):
    S3 = by_name("S3")
    A3 = make_subgroup(S3, [x for x in range(6) if S3.element_orders[x] in (1, 3)])
    H, emb = subgroup_as_group(A3)
    t = next(x for x in range(6) if S3.element_orders[x] == 2)
    it = inner_automorphism(S3, t)
    q = gamma.order
    f = [tuple(range(6)) if s % 2 == 0 else it for s in range(q)]
    pos = {y: i for i, y in enumerate(emb.map)}
    restricted = tuple(pos[it[emb.map[i]]] for i in range(3))
    fp = [tuple(range(3)) if s % 2 == 0 else restricted for s in range(q)]
    _, proj = quotient(S3, center(S3))
    return emb, make_band(gamma, S3, f), f, fp, sorted(set(proj.map))


@pytest.mark.parametrize("gamma", ["C2", "C4"])
def test_lift_a3_into_s3(gamma):
    # C = S3 / A3 has order 2 while Gamma acts through an inner automorphism; the class is neutral
    emb, B, f, fp, M = _s3_setup(by_name(gamma))
    res = lift_band_along(emb, B, f, fp, M)
    assert res.band.kernel.order == 3
    assert res.section[1] == fp[1]


def test_lift_identity():
    D4 = by_name("D4")
    ident = make_hom(D4, D4, list(range(8)))
    Q, _ = quotient(D4, center(D4))
    for k in (0, 1):
        B = band_from_outer(cyclic(2), D4, [0, k])
        res = lift_band_along(ident, B, B.section, B.section, list(range(Q.order)))
        assert res.section == B.section and res.j == (0, 0)


def _d4_center():
    D4 = by_name("D4")
    AG = aut_group(D4)
    Z = center(D4)
    _, zemb = subgroup_as_group(Z)
    _, proj = quotient(D4, Z)
    return D4, AG, zemb, proj


def _order(a):
    k, b = 1, a
    while b != tuple(range(len(a))):
        b, k = compose(a, b), k + 1
    return k


def test_lift_fails_neutrality_on_cokernel():
    D4, AG, zemb, proj = _d4_center()
    a = next(x for x in AG.elements if not AG.is_inner(x) and _order(x) == 4)
    B = make_band(cyclic(2), D4, [tuple(range(8)), a])
    w = AG.inner_witness[compose(a, a)]
    with pytest.raises(ConditionFailed) as exc:
        lift_band_along(zemb, B, B.section, [(0, 1), (0, 1)], sorted({0, proj.map[w]}))
    assert exc.value.condition == 5
    # with M trivial the defect itself leaves M
    with pytest.raises(ConditionFailed) as exc:
        lift_band_along(zemb, B, B.section, [(0, 1), (0, 1)], [0])
    assert exc.value.condition == 3


def test_lift_fails_stability():
    D4, AG, zemb, proj = _d4_center()
    a = next(x for x in AG.elements if not AG.is_inner(x) and _order(x) == 2)
    B = make_band(cyclic(2), D4, [tuple(range(8)), a])
    moved = [y for y in range(8) if proj.map[a[y]] != proj.map[y]]
    with pytest.raises(ConditionFailed) as exc:
        lift_band_along(zemb, B, B.section, [(0, 1), (0, 1)], sorted({0, proj.map[moved[0]]}))
    assert exc.value.condition == 4


def test_lift_fails_compatibility_and_image():
    emb, B, f, fp, M = _s3_setup(cyclic(2))
    with pytest.raises(ConditionFailed) as exc:
        lift_band_along(emb, B, f, [fp[0], fp[0]], M)
    assert exc.value.condition == 1
    with pytest.raises(ConditionFailed) as exc:
        lift_band_along(emb, B, f, fp, [0])
    assert exc.value.condition == 2


def test_representability_transfer_identity():
    D4 = by_name("D4")
    ident = make_hom(D4, D4, list(range(8)))
    for k in (0, 1):
        B = band_from_outer(cyclic(2), D4, [0, k])
        f = homomorphic_lifts(B)[0]
        out = lift_representability_transfer(ident, B.gamma, f, f, (0, 0))
        assert out == f


@pytest.mark.parametrize("case", SMALL, ids=_id)
def test_inner_forms(case):
    r = inner_form_report(case.band)
    assert r["representable"]
    assert r["well_defined"] and r["injective"] and r["into_inner_forms"]
    assert r["structures"] == r["inner_forms"]


@pytest.mark.parametrize("case", SMALL, ids=lambda c: f"{c.gamma_id}-{c.kernel_id}-{c.kappa_index}")
def test_neutral_description_with_inverted_delta(case):
    B = case.band
    f = is_representable(B)
    if f is None:
        pytest.skip("not representable")
    M = as_gamma_group(B, f)
    Q, _ = quotient_gamma_group(M, B.center)
    n = Cocycle(B, f, (0,) * (B.gamma.order ** 2))
    Zm = center_module(B)
    reached = set()
    for y in h1_nonabelian(Q).representatives:
        z = connecting_delta(M, B.center, y).cochain
        neg = AbelianCochain(Zm, 2, tuple(Zm.carrier.inv[v] for v in z.values))
        reached.add(center_action(B, neg, n).index)
    assert reached == set(h2_set(B).neutral_indices)
