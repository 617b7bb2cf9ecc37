import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from snk1.core_algebra import IndexRangeError, SnElement
from snk1.k1 import (
    LatticeVector,
    NotInCongruenceIdeal,
    NotInLevel,
    StructuralAnomaly,
    all_generators,
    bdet,
    chi_J,
    decompose,
    decompose_full_gl,
    deg_nIj,
    det_I,
    enumerate_generators,
    expected_generator_count,
    is_elementary_product,
    k1_report,
    psi_prime,
)
from snk1.matrix_group import (
    CornerMatrix,
    GroupWord,
    Mu,
    Theta,
    as_matrix,
    gen_mu,
    gen_theta,
    mat_mul,
    word_element,
    word_eval,
)
from snk1.sampling import random_congruence_word, random_full_word, random_p_elementary


class TestBdet:
    def test_examples(self):
        d = bdet(as_matrix(gen_mu(3, (3,), 5)))
        assert d.is_scalar() and d.coeff == 5
        x1 = SnElement.x(2, 1)
        d = bdet(CornerMatrix.diag(3, [x1]))
        assert (d.coeff, d.expo) == (1, (1, 0))
        assert bdet(CornerMatrix.elementary(3, 0, 4, x1)).coeff == 1

    @settings(max_examples=30)
    @given(st.randoms(use_true_random=False))
    def test_multiplicative(self, rng):
        a, _ = random_full_word(rng, 3, 3)
        b, _ = random_full_word(rng, 3, 3)
        ma, mb = word_eval(a), word_eval(b)
        lhs, da, db = bdet(mat_mul(ma, mb)), bdet(ma), bdet(mb)
        assert lhs.coeff == da.coeff * db.coeff
        assert lhs.expo == tuple(p + q for p, q in zip(da.expo, db.expo))


class TestDetI:
    def test_examples(self):
        assert det_I(gen_mu(3, (1, 3), 5), (1, 3)).coeff == 5
        th = gen_theta(3, 1, 2, (1, 2, 3))
        assert det_I(th, (1, 3)).expo == (1,)
        assert det_I(th, (2, 3)).expo == (-1,)
        assert deg_nIj(th, (1, 3), 2) == 1
        assert deg_nIj(th, (2, 3), 1) == -1

    def test_untouched_pattern_is_one(self):
        d = det_I(gen_mu(3, (1, 3), 5), (2, 3))
        assert d.is_scalar() and d.coeff == 1

    def test_errors(self):
        with pytest.raises(NotInLevel):
            det_I(gen_mu(3, (1,), 5), (1, 3))
        with pytest.raises(IndexRangeError):
            det_I(gen_mu(3, (1, 3), 5), (1, 2, 3))
        with pytest.raises(IndexRangeError):
            deg_nIj(gen_mu(3, (1, 3), 5), (1, 3), 3)

    def test_additive_on_products(self):
        n = 4
        a = gen_theta(n, 1, 2, (1, 2, 4)) ** 2
        b = gen_theta(n, 2, 1, (1, 2, 4))
        assert deg_nIj(a * b, (1, 4), 2) == deg_nIj(a, (1, 4), 2) + deg_nIj(b, (1, 4), 2) == 1


class TestLattice:
    def test_psi_of_theta(self):
        v = psi_prime(gen_theta(3, 1, 2, (1, 2, 3)), 2)
        assert v == LatticeVector.basis(2, (1, 3)) + LatticeVector.basis(1, (2, 3), -1)
        assert chi_J(v, (1, 2, 3)) == 0

    def test_vector_ops(self):
        v = LatticeVector.basis(2, (1, 3), 4)
        assert (v + -v).is_zero()
        assert chi_J(v, (1, 2, 3)) == 4
        assert chi_J(v, (2, 3)) == 0

    @pytest.mark.parametrize("J", [(1, 2, 4), (1, 3, 4), (1, 2, 3, 4)])
    def test_theta_in_kernel(self, J):
        n, s = 4, len(J) - 1
        for i, j in itertools.permutations(J[:-1], 2):
            v = psi_prime(gen_theta(n, i, j, J), s)
            assert all(chi_J(v, K) == 0 for K in itertools.combinations(range(1, n + 1), s + 1))


class TestDecompose:
    def test_identity(self):
        r = decompose(SnElement.one(4), [1, 2])
        assert r.is_elementary and r.residual == 1
        assert r.lambda_k == {1: 1, 2: 1}

    def test_theta_mu_elementary(self):
        n = 4
        e = word_element(GroupWord(n, (random_p_elementary(random.Random(4), n, [1, 2]),)))
        a = gen_theta(n, 2, 1, (1, 2, 4)) ** 3 * gen_mu(n, (1, 4), 5) * e
        r = decompose(a, [1, 2])
        assert r.n_ij == {(2, 1): 3}
        assert r.lambda_k == {1: 5, 2: 1}
        assert r.residual == e
        assert r.recompose() == a
        assert not r.is_elementary

    def test_theta_inverse_cancels(self):
        n = 4
        a = gen_theta(n, 1, 2, (1, 2, 4)) * gen_theta(n, 2, 1, (1, 2, 4))
        assert decompose(a, [1, 2]).is_elementary

    def test_json(self):
        a = gen_mu(3, (1, 3), Fraction(1, 2))
        out = decompose(a, [1]).to_json()
        assert out["lambda"] == [{"k": 1, "value": "1/2"}]
        assert out["n_ij"] == [] and out["residual"] == "1" and out["is_elementary"] is False

    def test_preconditions(self):
        with pytest.raises(NotInCongruenceIdeal):
            decompose(gen_mu(3, (3,), 2), [1])
        with pytest.raises(IndexRangeError):
            decompose(gen_mu(3, (1, 3), 2), [3])
        with pytest.raises(IndexRangeError):
            decompose(gen_mu(3, (1, 3), 2), [1], n=2)

    @settings(max_examples=25)
    @given(st.randoms(use_true_random=False), st.sampled_from([[1], [1, 2], [2, 3], [1, 2, 3]]))
    def test_random_round_trip(self, rng, supp):
        tw = random_congruence_word(rng, 4, supp, rng.randint(1, 4))
        a = word_element(tw.word)
        r = decompose(a, supp)
        assert r.recompose() == a
        assert {k: v for k, v in r.n_ij.items() if v} == tw.n_ij
        assert r.lambda_k == tw.lambda_k

    @settings(max_examples=20)
    @given(st.randoms(use_true_random=False))
    def test_is_elementary(self, rng):
        w = random_congruence_word(rng, 4, [1, 2], 3, elementary_only=True).word
        a = word_element(w)
        assert is_elementary_product(a, [1, 2])
        assert not is_elementary_product(Theta(1, 2, (1, 2, 4)).element(4) * a, [1, 2])
        assert not is_elementary_product(Mu((2, 4), 3).element(4) * a, [1, 2])


class TestFullGL:
    def test_scalar(self):
        lam, e = decompose_full_gl(as_matrix(gen_mu(3, (3,), 7)))
        assert lam == 7 and e.is_identity()

    def test_elementary(self):
        m = CornerMatrix.elementary(3, 0, 1, SnElement.x(2, 1))
        lam, e = decompose_full_gl(m)
        assert lam == 1 and e == m

    def test_non_unit(self):
        with pytest.raises(StructuralAnomaly):
            decompose_full_gl(CornerMatrix.diag(3, [SnElement.x(2, 1)]))

    @settings(max_examples=20)
    @given(st.randoms(use_true_random=False))
    def test_random(self, rng):
        w, lam = random_full_word(rng, 3, 4)
        got, e = decompose_full_gl(word_eval(w))
        d = bdet(e)
        assert got == lam and d.is_scalar() and d.coeff == 1


class TestGenerators:
    def test_counts(self):
        assert [len(all_generators(n)) for n in range(3, 8)] == [1, 5, 17, 49, 129]
        assert [expected_generator_count(n) for n in range(3, 8)] == [1, 5, 17, 49, 129]

    def test_level_lists(self):
        assert enumerate_generators(3, 2) == [Theta(2, 1, (1, 2, 3))]
        assert len(enumerate_generators(4, 3)) == 2
        with pytest.raises(IndexRangeError):
            enumerate_generators(4, 1)

    def test_congruence_generators(self):
        gens = all_generators(4, [1, 2])
        assert len(gens) == 3
        assert all(t.J[-1] == 4 for t in gens)

    def test_reports(self):
        assert k1_report(4).structure == "K*"
        assert k1_report(4).generator_count == 5
        assert k1_report(4, [1]).structure == "K*"
        assert k1_report(3, [1, 2]).structure == "Z^1 x (K*)^2"
        r = k1_report(4, [1, 2, 3])
        assert r.structure == "Z^3 x (K*)^3"
        assert len(r.k1_generators) == 6
        assert r.to_json()["support"] == [1, 2, 3]
