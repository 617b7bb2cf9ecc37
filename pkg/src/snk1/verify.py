"""Verification batteries behind the ``verify-paper`` command.

Each battery returns a :class:`Check`.  The identity suite contributes one
check per identity; the remaining batteries cover factorizations, degree
tables, generator counts, decomposition and the P_n oracle.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .core_algebra import oracle_compare
from .identities import LAMBDAS, identity_suite
from .k1 import (
    all_generators,
    bdet,
    chi_J,
    decompose,
    decompose_full_gl,
    deg_nIj,
    expected_generator_count,
    psi_prime,
)
from .matrix_group import (
    CornerMatrix,
    as_element,
    as_matrix,
    factor_mu_elementary,
    factor_theta_elementary,
    gen_mu,
    gen_theta,
    word_element,
    word_eval,
)
from .sampling import random_congruence_word, random_full_word, random_monomial


@dataclass
class Check:
    id: str
    label: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"id": self.id, "equation_label": self.label, "status": self.status, "detail": self.detail}


def _timed(fn: Callable[[], tuple[bool, str]], id: str, label: str) -> Check:
    t = time.perf_counter()
    ok, detail = fn()
    return Check(id, label, ok, detail, time.perf_counter() - t)


def theta_factor_check(n: int, J: tuple[int, ...]) -> tuple[bool, str]:
    bad = []
    for i, j in itertools.permutations(J, 2):
        w = factor_theta_elementary(n, i, j, J)
        target = CornerMatrix.diag(n, [gen_theta(n - 1, i, j, J)])
        if not (w.is_elementary() and word_eval(w) == target):
            bad.append((i, j))
    return not bad, f"failed pairs {bad}" if bad else f"{len(J) * (len(J) - 1)} pairs"


def _theta_factorizations() -> tuple[bool, str]:
    results = [theta_factor_check(3, (1, 2)), theta_factor_check(4, (1, 2, 3)), theta_factor_check(4, (1, 3))]
    return all(ok for ok, _ in results), "; ".join(d for _, d in results)


def _mu_factorizations() -> tuple[bool, str]:
    count = 0
    for n in (3, 4):
        for r in range(1, n):
            for inner in itertools.combinations(range(1, n), r):
                I = inner + (n,)
                for lam in LAMBDAS + (-1,):
                    w = factor_mu_elementary(n, I, lam)
                    count += 1
                    if not (w.is_elementary() and word_eval(w) == as_matrix(gen_mu(n, I, lam))):
                        return False, f"I={I}, lambda={lam}"
    return True, f"{count} cases"


def degree_table(n: int) -> tuple[int, list[tuple]]:
    """Compare deg_{n,I,i}(theta_{m(J),j}(J)) with the -1 / 1 / 0 rule."""
    checked, bad = 0, []
    for s in range(1, n):
        for rest in itertools.combinations(range(1, n), s):
            J = rest + (n,)
            m = max(rest)
            for j in J:
                if j == m:
                    continue
                th = gen_theta(n, m, j, J)
                for I in itertools.combinations(range(1, n + 1), s):
                    for i in range(1, n + 1):
                        if i in I:
                            continue
                        if set(I) == set(J) - {m} and i == m:
                            expected = -1
                        elif set(I) == set(J) - {j} and i == j:
                            expected = 1
                        else:
                            expected = 0
                        checked += 1
                        got = deg_nIj(th, I, i)
                        if got != expected:
                            bad.append((J, j, I, i, got, expected))
    return checked, bad


def _degree_tables() -> tuple[bool, str]:
    parts, ok = [], True
    for n in (3, 4):
        checked, bad = degree_table(n)
        ok = ok and not bad
        parts.append(f"n={n}: {checked} entries, {len(bad)} mismatches")
    return ok, "; ".join(parts)


def _psi_kernel() -> tuple[bool, str]:
    n = 4
    for s in (2, 3):
        for rest in itertools.combinations(range(1, n), s):
            J = rest + (n,)
            for i, j in itertools.permutations(rest, 2):
                v = psi_prime(gen_theta(n, i, j, J), s)
                if any(chi_J(v, K) for K in itertools.combinations(range(1, n + 1), s + 1)):
                    return False, f"theta_{i}{j}({J})"
    return True, "all theta at n=4"


def _generator_counts() -> tuple[bool, str]:
    got = [len(all_generators(n)) for n in range(3, 8)]
    want = [expected_generator_count(n) for n in range(3, 8)]
    return got == want == [1, 5, 17, 49, 129], f"counts {got}"


def _decomposition(samples: int = 20, seed: int = 11) -> tuple[bool, str]:
    rng = random.Random(seed)
    n = 4
    for t in range(samples):
        supp = sorted(rng.sample([1, 2, 3], rng.randint(1, 3)))
        tw = random_congruence_word(rng, n, supp, rng.randint(1, 5))
        a = word_element(tw.word)
        rep = decompose(a, supp)
        nij = {k: v for k, v in rep.n_ij.items() if v}
        if rep.recompose() != a or nij != tw.n_ij or rep.lambda_k != tw.lambda_k:
            return False, f"sample {t}"
    return True, f"{samples} words"


def _full_gl(samples: int = 15, seed: int = 5) -> tuple[bool, str]:
    rng = random.Random(seed)
    for t in range(samples):
        w, lam = random_full_word(rng, 3, rng.randint(1, 5))
        a = word_eval(w)
        got, e = decompose_full_gl(a)
        if got != lam or not bdet(e).is_scalar() or bdet(e).coeff != 1:
            return False, f"sample {t}"
        if as_matrix(as_element(a)) != a:
            return False, f"round trip {t}"
    return True, f"{samples} words"


def _oracle(samples: int = 100, seed: int = 3) -> tuple[bool, str]:
    rng = random.Random(seed)
    for t in range(samples):
        n = rng.randint(1, 3)
        a, b = random_monomial(rng, n, 3), random_monomial(rng, n, 3)
        if not oracle_compare(a, b, 8):
            return False, f"pair {t}"
    return True, f"{samples} monomial pairs"


BATTERIES = [
    ("theta-factorization", "theta_ij(J) as an explicit elementary word", _theta_factorizations),
    ("mu-factorization", "mu_I(lambda) as an explicit elementary word", _mu_factorizations),
    ("degree-table", "deg_{n,I,i} of theta_{m(J),j}(J) is -1, 1 or 0", _degree_tables),
    ("psi-kernel", "psi' of theta lies in every ker chi_J", _psi_kernel),
    ("generator-count", "theta generator totals (N-2)2^(N-1)+1", _generator_counts),
    ("decomposition", "theta/mu/elementary words decompose with matching tallies", _decomposition),
    ("full-gl", "det-bar recovers the mu_n scalar and kills elementary words", _full_gl),
    ("oracle", "normal-form products agree with the action on P_n", _oracle),
]


def run_all() -> list[Check]:
    checks = []
    for res in identity_suite():
        detail = f"{res.instances} instances" + (f", failed: {res.failures[:3]}" if res.failures else "")
        checks.append(Check(res.id, res.equation_label, res.status == "pass", detail))
    for id, label, fn in BATTERIES:
        checks.append(_timed(fn, id, label))
    return checks
