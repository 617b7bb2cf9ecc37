import pytest
from hypothesis import given, settings

from conftest import elements
from snk1.core_algebra import idempotent, matrix_unit
from snk1.parser import ParseError, format_element, format_split, infer_n, parse_element
from snk1.core_algebra import to_split


def test_defining_relation():
    assert parse_element("y1*x1") == 1


def test_matrix_unit_syntax():
    assert parse_element("E(1;0,0)") == matrix_unit(1, [1], [0], [0])
    assert parse_element("E(1;2,1)*E(2;0,3)") == matrix_unit(2, [1, 2], [2, 0], [1, 3])
    assert parse_element("e(1,3)") == idempotent(3, [1, 3])


def test_scalars_and_signs():
    a = parse_element("-x1 + 2/3*y2")
    assert format_element(a) == "2/3*y2 - x1"
    assert parse_element("(x1 + 1)^2") == parse_element("x1^2 + 2*x1 + 1")


def test_infer_n():
    assert infer_n("x1*y3") == 3
    assert parse_element("x1", 4).n == 4


@pytest.mark.parametrize("text,offset", [("x1^2*", 5), ("x1 $ y1", 3), ("1/0", 2)])
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.offset == offset


def test_index_out_of_range():
    with pytest.raises(ParseError) as info:
        parse_element("x3", 2)
    assert info.value.offset == 1


def test_format_split():
    assert "x1" in format_split(to_split(parse_element("x1^2*y1")))


@settings(max_examples=250)
@given(elements(3, max_terms=5))
def test_round_trip(a):
    assert parse_element(format_element(a), a.n) == a
