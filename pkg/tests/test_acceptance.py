"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its timing, also
under plain ``pytest``.  ``python3 tests/test_acceptance.py`` runs just this
module.
All comparisons are exact; the only tolerances are the wall-clock limits below.
"""

import random
import sys
import time

import pytest

from snk1.core_algebra import oracle_compare
from snk1.identities import SUITE, run_identity
from snk1.k1 import all_generators, bdet, decompose, decompose_full_gl, is_elementary_product
from snk1.matrix_group import Mu, Theta, word_element, word_eval
from snk1.sampling import SCALARS, random_congruence_word, random_full_word, random_monomial
from snk1.verify import degree_table, theta_factor_check

IDENTITY_LIMIT = 10.0
THETA_RELATION_LIMIT = 5.0
FACTOR_THETA_LIMIT = 30.0
FACTOR_THETA_FOUR_LIMIT = 120.0
DECOMPOSE_LIMIT = 60.0
ORACLE_PAIRS = 500
ORACLE_DEGREE = 8


@pytest.fixture
def report(capsys):
    def emit(number: int, name: str, ok: bool, seconds: float, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number} {name} ({seconds:.2f}s)"
        with capsys.disabled():
            print(f"\n{line}: {detail}" if detail else f"\n{line}")

    return emit


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_1_identity_replay(report):
    ids = [key for key, _, _ in SUITE if key != "theta-relations"]
    results, secs = timed(lambda: [run_identity(k) for k in ids])
    failed = [r.id for r in results if r.status != "pass"]
    ok = not failed and secs < IDENTITY_LIMIT
    report(1, "identity replay", ok, secs, f"{len(results)} identities" + (f", failed {failed}" if failed else ""))
    assert not failed
    assert secs < IDENTITY_LIMIT


def test_criterion_2_theta_relations(report):
    res, secs = timed(lambda: run_identity("theta-relations"))
    ok = res.status == "pass" and secs < THETA_RELATION_LIMIT
    report(2, "theta relations", ok, secs, f"{res.instances} instances")
    assert res.status == "pass", res.failures
    assert secs < THETA_RELATION_LIMIT


def test_criterion_3_degree_table(report):
    (tables, secs) = timed(lambda: {n: degree_table(n) for n in (3, 4)})
    bad = [b for _, bs in tables.values() for b in bs]
    counts = {n: checked for n, (checked, _) in tables.items()}
    report(3, "degree table", not bad, secs, f"entries {counts}, {len(bad)} mismatches")
    assert not bad


@pytest.mark.parametrize("n,J,limit", [
    (3, (1, 2), FACTOR_THETA_LIMIT),
    (4, (1, 2, 3), FACTOR_THETA_LIMIT),
    (5, (1, 2, 3, 4), FACTOR_THETA_FOUR_LIMIT),
])
def test_criterion_4_factor_theta(n, J, limit, report):
    (ok, detail), secs = timed(lambda: theta_factor_check(n, J))
    report(4, f"factor_theta J={set(J)}", ok and secs < limit, secs, detail)
    assert ok, detail
    assert secs < limit


def test_criterion_5_generator_count(report):
    counts, secs = timed(lambda: [len(all_generators(N + 1)) for N in range(2, 7)])
    ok = counts == [1, 5, 17, 49, 129]
    report(5, "generator count", ok, secs, f"{counts}")
    assert ok


def test_criterion_6_decomposition_round_trip(report):
    def run():
        rng = random.Random(2024)
        bad = []
        for t in range(100):
            supp = sorted(rng.sample([1, 2, 3], rng.randint(1, 3)))
            tw = random_congruence_word(rng, 4, supp, rng.randint(1, 6))
            a = word_element(tw.word)
            rep = decompose(a, supp)
            nij = {k: v for k, v in rep.n_ij.items() if v}
            if rep.recompose() != a or nij != tw.n_ij or rep.lambda_k != tw.lambda_k:
                bad.append(t)
        return bad

    bad, secs = timed(run)
    report(6, "decomposition round trip", not bad and secs < DECOMPOSE_LIMIT, secs, f"100 words, {len(bad)} failures")
    assert not bad
    assert secs < DECOMPOSE_LIMIT


def test_criterion_7_oracle(report):
    def run():
        rng = random.Random(77)
        bad = 0
        for _ in range(ORACLE_PAIRS):
            n = rng.randint(1, 3)
            a, b = random_monomial(rng, n, 4), random_monomial(rng, n, 4)
            bad += not oracle_compare(a, b, ORACLE_DEGREE)
        return bad

    bad, secs = timed(run)
    report(7, "oracle agreement", not bad, secs, f"{ORACLE_PAIRS} pairs, {bad} disagreements")
    assert not bad


def test_criterion_8_full_gl(report):
    def run():
        rng = random.Random(8)
        bad = []
        for t in range(50):
            w, lam = random_full_word(rng, rng.choice((2, 3, 4)), rng.randint(1, 6))
            got, e = decompose_full_gl(word_eval(w))
            d = bdet(e)
            if got != lam or not (d.is_scalar() and d.coeff == 1):
                bad.append(t)
        return bad

    bad, secs = timed(run)
    report(8, "K1 classifier", not bad, secs, f"50 words, {len(bad)} failures")
    assert not bad


def test_criterion_9_membership(report):
    def run():
        rng = random.Random(9)
        n = 4
        bad = []
        for t in range(100):
            supp = sorted(rng.sample([1, 2, 3], rng.randint(1, 3)))
            a = word_element(random_congruence_word(rng, n, supp, rng.randint(1, 4), elementary_only=True).word)
            if not is_elementary_product(a, supp):
                bad.append(("elementary", t))
            if len(supp) >= 2 and rng.random() < 0.5:
                i, j = rng.sample(supp, 2)
                tok = Theta(i, j, (i, j, n))
            else:
                tok = Mu((rng.choice(supp), n), rng.choice([s for s in SCALARS if s != 1]))
            if is_elementary_product(tok.element(n) * a, supp):
                bad.append(("perturbed", t))
        return bad

    bad, secs = timed(run)
    report(9, "membership criterion", not bad, secs, f"100 words, {len(bad)} failures")
    assert not bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
