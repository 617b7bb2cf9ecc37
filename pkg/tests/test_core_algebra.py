import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import elements, monomial_elements
from snk1.core_algebra import (
    ONE,
    DimensionMismatch,
    IdealSpec,
    IndexRangeError,
    PnPolynomial,
    SnElement,
    SplitElement,
    Unit,
    XPow,
    YPow,
    act_on_polynomial,
    from_split,
    ideal_level,
    idempotent,
    in_ideal,
    matrix_unit,
    nf_mul,
    oracle_compare,
    ring_linear,
    to_split,
)
from snk1.matrix_group import gen_theta
from snk1.parser import parse_element as P


def x(i, n=1, k=1):
    return SnElement.x(n, i, k)


def y(i, n=1, k=1):
    return SnElement.y(n, i, k)


def E(p, q, n=1, k=1):
    return matrix_unit(n, [k], [p], [q])


class TestMultiplication:
    def test_defining_relation(self):
        assert y(1) * x(1) == 1
        assert x(1) * y(1) != 1

    def test_matrix_unit_product(self):
        assert E(0, 1) * E(1, 2) == E(0, 2)
        assert E(0, 1) * E(2, 2) == 0

    def test_monomial_rule(self):
        a = SnElement.monomial(1, [2], [3])
        assert a * (x(1) * y(1)) == a
        assert y(1, k=1) ** 2 * x(1) ** 3 == x(1)

    def test_components_commute(self):
        n = 3
        for i, j in itertools.permutations(range(1, n + 1), 2):
            assert x(i, n) * y(j, n) == y(j, n) * x(i, n)
            assert x(i, n) * x(j, n) == x(j, n) * x(i, n)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            nf_mul(x(1, 1), x(1, 2))

    @settings(max_examples=200)
    @given(elements(2), elements(2), elements(2))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(elements(2))
    def test_unital(self, a):
        assert a * 1 == a == 1 * a

    @given(elements(2), elements(2), elements(2))
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @pytest.mark.parametrize("i,j", [(i, j) for i in range(5) for j in range(5)])
    def test_shift_rules(self, i, j):
        assert x(1) * E(i, j) == E(i + 1, j)
        assert y(1) * E(i, j) == (E(i - 1, j) if i else 0)
        assert E(i, j) * y(1) == E(i, j + 1)
        assert E(i, j) * x(1) == (E(i, j - 1) if j else 0)


class TestLinear:
    def test_ring_linear(self):
        a, b = x(1) + 2, y(1)
        assert ring_linear(a, b, 1, 0) == a
        assert ring_linear(a, a, 1, -1) == 0
        assert x(1) * y(1) + E(0, 0) == 1

    def test_zero_is_empty(self):
        assert SnElement.zero(2).terms == {}
        assert not (x(1) - x(1))


class TestMatrixUnits:
    def test_examples(self):
        assert E(0, 0) == 1 - x(1) * y(1)
        assert E(1, 0) == x(1) - x(1, k=1) ** 2 * y(1)
        e12 = matrix_unit(2, [1, 2], [0, 0], [0, 0])
        assert len(e12) == 4
        assert e12 * e12 == e12

    @pytest.mark.parametrize("I,J", list(itertools.product(
        [s for r in range(4) for s in itertools.combinations(range(1, 4), r)], repeat=2)))
    def test_idempotents_multiply_by_union(self, I, J):
        eI, eJ = idempotent(3, I), idempotent(3, J)
        assert eI * eI == eI
        assert eI * eJ == idempotent(3, set(I) | set(J))

    def test_index_validation(self):
        with pytest.raises(IndexRangeError):
            matrix_unit(2, [3], [0], [0])
        with pytest.raises((IndexRangeError, ValueError)):
            matrix_unit(2, [1, 1], [0, 0], [0, 0])


class TestSplit:
    def test_examples(self):
        assert to_split(x(1) * y(1)) == SplitElement(1, {(ONE,): 1, (Unit(0, 0),): -1})
        assert to_split(x(1) ** 2 * y(1)) == SplitElement(1, {(XPow(1),): 1, (Unit(1, 0),): -1})
        assert to_split(y(1)) == SplitElement(1, {(YPow(1),): 1})

    @settings(max_examples=500)
    @given(elements(3, max_exp=3))
    def test_round_trip(self, a):
        s = to_split(a)
        assert from_split(s) == a
        for key in s.terms:
            for f in key:
                if f.kind in ("x", "y"):
                    assert f.a >= 1

    def test_split_matches_action(self):
        lhs = x(1) ** 2 * y(1)
        rhs = x(1) - E(1, 0)
        for d in range(6):
            m = PnPolynomial.monomial([d])
            assert act_on_polynomial(lhs, m) == act_on_polynomial(rhs, m)


class TestIdeals:
    def test_levels(self):
        assert ideal_level(x(1)) == 0
        assert ideal_level(idempotent(2, [1, 2])) == 2
        assert ideal_level(gen_theta(2, 1, 2, [1, 2]) - 1) == 1

    def test_membership(self):
        n = 3
        e13 = idempotent(n, [1, 3])
        assert in_ideal(e13, IdealSpec.p_I([1, 3]))
        assert in_ideal(e13, IdealSpec.height_one(1))
        assert not in_ideal(e13, IdealSpec.p_I([2]))
        assert in_ideal(e13, IdealSpec.a_ns(2))
        assert not in_ideal(e13, IdealSpec.a_ns(3))
        assert in_ideal(e13, IdealSpec.p_pn([1], 3))
        assert not in_ideal(e13, IdealSpec.p_pn([2], 3))
        assert not in_ideal(idempotent(n, [3]), IdealSpec.p_pn([1, 2], 3))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            IdealSpec.p_pn([], 3)
        with pytest.raises(IndexRangeError):
            in_ideal(x(1, 2), IdealSpec.a_ns(5))

    @given(elements(2, 3), st.sampled_from([[1], [2], [1, 2]]))
    def test_ideals_absorb(self, a, I):
        e = idempotent(2, I)
        lvl = ideal_level(e)
        for prod in (a * e, e * a):
            if prod:
                assert ideal_level(prod) >= lvl


class TestOracle:
    def test_action_rules(self):
        one = PnPolynomial.monomial([0])
        assert act_on_polynomial(y(1), one) == PnPolynomial(1, {})
        assert act_on_polynomial(x(1), PnPolynomial.monomial([2])) == PnPolynomial.monomial([3])
        unit = matrix_unit(2, [1, 2], [2, 0], [1, 3])
        assert act_on_polynomial(unit, PnPolynomial.monomial([1, 3])) == PnPolynomial.monomial([2, 0])
        assert act_on_polynomial(unit, PnPolynomial.monomial([0, 3])) == PnPolynomial(2, {})

    def test_examples(self):
        assert oracle_compare(y(1), x(1), 4)
        assert oracle_compare(E(0, 1), E(1, 2), 6)

    @settings(max_examples=300)
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(monomial_elements(n), monomial_elements(n))))
    def test_random_monomials(self, pair):
        assert oracle_compare(pair[0], pair[1], 8)

    @given(elements(2, 3, 2), elements(2, 3, 2))
    def test_random_elements(self, a, b):
        assert oracle_compare(a, b, 5)

    def test_negative_degree_bound(self):
        with pytest.raises(ValueError):
            oracle_compare(x(1), y(1), -1)


def test_permute_is_homomorphism():
    perm = {1: 3, 2: 1, 3: 2}
    a, b = P("x1*y2 + E(3;0,1)", 3), P("y1^2 - x3*e(1,2)", 3)
    assert (a * b).permute(perm) == a.permute(perm) * b.permute(perm)
    assert x(1, 3).permute(perm) == x(3, 3)


def test_extend_restrict():
    a = P("x1*y2 + 3", 2)
    assert a.extend(4).restrict(2) == a
    assert a.extend(4).n == 4
