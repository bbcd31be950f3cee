import json
import random

import pytest
from hypothesis import given, strategies as st

from bandcoh.catalog import SMALL_GROUP_IDS, by_name, cyclic, small_groups
from bandcoh.errors import ParseError, ValidationError
from bandcoh.formats import (
    dumps,
    group_to_doc,
    group_to_text,
    kernel_to_doc,
    load_document,
    parse_group,
    parse_kernel,
    parse_permutation,
    parse_space,
    space_to_doc,
)
from bandcoh.groups import is_isomorphic
from bandcoh.springer import random_space
from bandcoh.sweep import kernel_cases


def test_table_form_c2():
    G = parse_group('{"kind": "table", "n": 2, "rows": [[0, 1], [1, 0]]}')
    assert G.order == 2


def test_perm_form_cycle_notation():
    G = parse_group('{"kind": "perm", "degree": 3, "generators": ["(1 2 3)"]}')
    assert G.order == 3 and is_isomorphic(G, cyclic(3))
    S = parse_group('{"kind": "perm", "degree": 3, "generators": [[2, 1, 3], "(1 2 3)"]}')
    assert S.order == 6


def test_permutation_notations_agree():
    assert parse_permutation("(1 2 3)", 3) == (1, 2, 0)
    assert parse_permutation([2, 3, 1], 3) == (1, 2, 0)
    assert parse_permutation("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_permutation("()", 2) == (0, 1)
    with pytest.raises(ValidationError):
        parse_permutation("(1 1)", 2)
    with pytest.raises(ValidationError):
        parse_permutation([1, 1], 2)


def test_malformed_row_reports_index():
    with pytest.raises(ParseError) as exc:
        parse_group('{"kind": "table", "n": 2, "rows": [[0, 1], [1]]}')
    assert exc.value.field == "group.rows[1]"
    with pytest.raises(ParseError) as exc:
        parse_group("table 2\n0 1\n1\n")
    assert exc.value.line == 3 and exc.value.field == "rows[1]"


def test_bad_json_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_kernel('{\n"kind": "kernel",\n"gamma": }')
    assert exc.value.line == 3


def test_missing_field():
    with pytest.raises(ParseError) as exc:
        parse_kernel('{"kind": "kernel", "gamma": "C2", "kernel": "C4"}')
    assert exc.value.field == "section"


def test_text_group_forms():
    G = parse_group("# cyclic\ntable 3 C3\n0 1 2\n1 2 0\n2 0 1\n")
    assert G.order == 3 and G.name == "C3"
    P = parse_group("perm 4\n(1 2 3 4)\n(1 3)\n")
    assert is_isomorphic(P, by_name("D4"))
    with pytest.raises(ParseError):
        parse_group("matrix 2\n")


def test_catalog_reference():
    assert parse_group('"Q8"') == by_name("Q8")
    assert parse_group('{"kind": "catalog", "name": "S3"}') == by_name("S3")
    with pytest.raises(ValidationError):
        parse_group('"Z7x"')


@pytest.mark.parametrize("name", SMALL_GROUP_IDS)
def test_group_round_trip(name):
    G = by_name(name)
    for text in (dumps(group_to_doc(G)), group_to_text(G)):
        H = parse_group(text)
        assert H == G and H.name == G.name


@pytest.mark.parametrize("case", kernel_cases(2, 8), ids=lambda c: f"{c.gamma_id}-{c.kernel_id}-{c.kappa_index}")
def test_kernel_round_trip(case):
    B = case.band
    assert parse_kernel(dumps(kernel_to_doc(B))) == B


@given(st.integers(0, 10**6))
def test_space_round_trip(seed):
    sp = random_space(random.Random(seed), [G for _, G in small_groups(4)], [G for _, G in small_groups(8)])
    back = parse_space(dumps(space_to_doc(sp)))
    assert back.group == sp.group
    assert back.right_action == sp.right_action and back.gamma_action == sp.gamma_action


def test_load_document_kinds():
    B = kernel_cases(2, 4)[-1].band
    assert load_document(dumps(kernel_to_doc(B)))[0] == "kernel"
    assert load_document("table 1\n0\n")[0] == "group"
    with pytest.raises(ParseError):
        load_document(json.dumps({"kind": "other"}))
