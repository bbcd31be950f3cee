import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from bandcoh.catalog import by_name, cyclic, perm_group, small_groups
from bandcoh.cohomology import make_gamma_group
from bandcoh.errors import ValidationError
from bandcoh.groups import make_subgroup, whole, trivial_subgroup
from bandcoh.h2 import h2_set, is_cocycle
from bandcoh.springer import (
    coset_space,
    coset_twists,
    fixed_points,
    has_equivariant_lift,
    make_space,
    random_space,
    springer_class,
    springer_cocycle,
    stabilizer,
)

C2, C4 = cyclic(2), cyclic(4)
ID4 = (0, 1, 2, 3)
NEG4 = (0, 3, 2, 1)


def trivial_gamma_group(gamma, G):
    return make_gamma_group(gamma, G, [tuple(range(G.order))] * gamma.order)


def test_regular_space_has_trivial_stabilizer():
    grp = trivial_gamma_group(C2, by_name("S3"))
    sp = coset_space(grp, trivial_subgroup(grp.carrier), (0, 0))
    assert sp.points == 6
    assert stabilizer(sp, 0).order == 1
    sc = springer_class(sp)
    assert h2_set(sc.band).order == 1 and sc.neutral


def test_point_has_full_stabilizer():
    grp = trivial_gamma_group(C2, by_name("S3"))
    sp = coset_space(grp, whole(grp.carrier), (0, 0))
    assert sp.points == 1 and stabilizer(sp, 0).order == 6


def test_s3_on_three_points():
    S3 = perm_group(3, [(1, 0, 2), (1, 2, 0)])
    grp = trivial_gamma_group(C2, S3)
    # right action of S3 on {0,1,2}: x.g = g^-1(x)
    elems = sorted(permutations(range(3)))
    ra = [[elems[S3.inv[g]][x] for g in range(6)] for x in range(3)]
    sp = make_space(grp, ra, [[x, x] for x in range(3)])
    assert stabilizer(sp, 1).order == 2


def test_c4_inversion_quotient():
    grp = make_gamma_group(C2, C4, [ID4, NEG4])
    H0 = make_subgroup(C4, [0, 2])
    for c in coset_twists(grp, H0):
        sp = coset_space(grp, H0, c)
        for x in range(sp.points):
            data = springer_cocycle(sp, x)
            assert set(data.cocycle.g) <= {0, 1}  # labels inside the order-2 stabilizer
            assert data.stabilizer.members == (0, 2)
            assert is_cocycle(data.band, data.cocycle.f, data.cocycle.g)


def test_fixed_point_gives_trivial_cocycle():
    grp = make_gamma_group(C2, C4, [ID4, NEG4])
    sp = coset_space(grp, make_subgroup(C4, [0, 2]), (0, 0))
    assert fixed_points(sp) == [0, 1]
    data = springer_cocycle(sp, 0)
    assert data.transporter == (0, 0)
    assert set(data.cocycle.g) == {0}
    assert springer_class(sp).neutral
    assert has_equivariant_lift(sp, 0) == (0, 0)


def test_non_neutral_space():
    # Gamma swaps the two cosets of {0, 2} in C4; the defect h_{1,1} is the element 2 of order 2
    grp = trivial_gamma_group(C2, C4)
    sp = coset_space(grp, make_subgroup(C4, [0, 2]), (0, 1))
    assert fixed_points(sp) == []
    data = springer_cocycle(sp, 0)
    assert data.cocycle.g == (0, 0, 0, 1)
    sc = springer_class(sp)
    assert not sc.neutral and sc.base_point_independent
    assert has_equivariant_lift(sp) is None


def test_neutral_without_fixed_points():
    # with the inversion action the same swap is neutral although X has no fixed point
    grp = make_gamma_group(C2, C4, [ID4, NEG4])
    sp = coset_space(grp, make_subgroup(C4, [0, 2]), (0, 1))
    assert fixed_points(sp) == []
    assert springer_class(sp).neutral
    a = has_equivariant_lift(sp)
    assert a is not None
    assert sp.right_action[sp.gamma_action[0][1]][C4.inv[a[1]]] == 0


def test_space_validation():
    grp = trivial_gamma_group(C2, C4)
    with pytest.raises(ValidationError, match="transitively"):
        make_space(grp, [[0, 0, 0, 0], [1, 1, 1, 1]], [[0, 0], [1, 1]])
    with pytest.raises(ValidationError, match="right action"):
        make_space(grp, [[0, 1, 0, 1], [1, 0, 0, 1]], [[0, 1], [1, 0]])
    grp2 = make_gamma_group(C2, C4, [ID4, NEG4])
    # the Gamma-action x -> x on C4 itself is not compatible with inversion
    with pytest.raises(ValidationError, match="sigma"):
        make_space(grp2, [[C4.mult[x][g] for g in range(4)] for x in range(4)], [[x, x] for x in range(4)])


def test_bad_transporter_rejected():
    grp = trivial_gamma_group(C2, C4)
    sp = coset_space(grp, make_subgroup(C4, [0, 2]), (0, 1))
    with pytest.raises(ValidationError):
        springer_cocycle(sp, 0, transporters=(0, 0))


GAMMAS = [G for _, G in small_groups(4)]
GROUPS = [G for _, G in small_groups(8)]


@settings(max_examples=60)
@given(st.integers(0, 10**9))
def test_random_spaces(seed):
    sp = random_space(random.Random(seed), GAMMAS, GROUPS)
    for x in range(sp.points):
        d = springer_cocycle(sp, x)
        assert is_cocycle(d.band, d.cocycle.f, d.cocycle.g)
    sc = springer_class(sp)
    assert sc.base_point_independent
    if fixed_points(sp):
        assert sc.neutral
    assert (has_equivariant_lift(sp) is not None) == sc.neutral
