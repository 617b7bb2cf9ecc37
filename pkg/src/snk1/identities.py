"""Exact replay of the matrix identities behind the elementary factorizations.

Every check multiplies explicit 2 x 2 blocks (embedded as corner matrices)
or elements of S_n and compares with the expected closed form.  Identities
over a ring K + K e use e = e_I inside S_n for every nonempty I in 1..4, with
x, y taken from component 5.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .core_algebra import SnElement, idempotent, matrix_unit
from .matrix_group import (
    CornerMatrix,
    Elem,
    GroupWord,
    Mu,
    Theta,
    as_matrix,
    gen_mu,
    gen_theta,
    mat_mul,
    verify_inverse,
    whitehead_diag,
    word_element,
    word_eval,
    word_inverse,
)

LAMBDAS = (Fraction(2), Fraction(3), Fraction(-1, 2), Fraction(1, 7))

# entries live in S_5, so corner matrices use ambient count 6
_DIM = 5
_N = _DIM + 1


@dataclass
class IdentityResult:
    id: str
    equation_label: str
    status: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"id": self.id, "equation_label": self.equation_label, "status": self.status}


def _mat(n: int, rows) -> CornerMatrix:
    return CornerMatrix.from_rows(n, rows)


def _prod(*ms: CornerMatrix) -> CornerMatrix:
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


def _idempotent_sets() -> Iterator[tuple[int, ...]]:
    for r in range(1, 5):
        yield from itertools.combinations(range(1, 5), r)


def _unit_inverse(lam: Fraction, e: SnElement) -> SnElement:
    # (1 + lam e)^-1 = 1 - lam/(1+lam) e
    return 1 - e.scale(lam / (1 + lam))


# ---------------------------------------------------------------------------
# Shear identities
# ---------------------------------------------------------------------------


def _scalar_shear() -> Iterator[tuple[str, bool]]:
    x, y = SnElement.x(_DIM, 5), SnElement.y(_DIM, 5)
    E00 = matrix_unit(_DIM, [5], [0], [0])
    for lam in LAMBDAS:
        lhs = _prod(
            _mat(_N, [[1, 0], [y.scale(-1 / (1 + lam)), 1]]),
            _mat(_N, [[1, x.scale(lam)], [0, 1]]),
            _mat(_N, [[1, 0], [y, 1]]),
            _mat(_N, [[1, x.scale(-lam / (1 + lam))], [0, 1]]),
        )
        rhs = mat_mul(
            _mat(_N, [[1 + lam, 0], [0, 1 / (1 + lam)]]),
            _mat(_N, [[1 - E00.scale(lam / (1 + lam)), 0], [0, 1]]),
        )
        yield f"lambda={lam}", lhs == rhs


def _idempotent_shear(sandwich: bool) -> Iterator[tuple[str, bool]]:
    x, y = SnElement.x(_DIM, 5), SnElement.y(_DIM, 5)
    E00 = matrix_unit(_DIM, [5], [0], [0])
    for I in _idempotent_sets():
        e = idempotent(_DIM, I)
        for lam in LAMBDAS:
            unit = 1 + e.scale(lam)
            inv = _unit_inverse(lam, e)
            low = e * y if sandwich else y
            lhs = _prod(
                _mat(_N, [[1, 0], [-(low * inv), 1]]),
                _mat(_N, [[1, (e * x).scale(lam)], [0, 1]]),
                _mat(_N, [[1, 0], [low, 1]]),
                _mat(_N, [[1, -(e.scale(lam) * inv * x)], [0, 1]]),
            )
            rhs = mat_mul(
                _mat(_N, [[unit, 0], [0, inv]]),
                _mat(_N, [[1 - (e * E00).scale(lam / (1 + lam)), 0], [0, 1]]),
            )
            yield f"I={I}, lambda={lam}", lhs == rhs


def _idempotent_shear_product() -> Iterator[tuple[str, bool]]:
    # the four-shear product equals diag(1 + lam e x y, (1 + lam e)^-1)
    x, y = SnElement.x(_DIM, 5), SnElement.y(_DIM, 5)
    for I in _idempotent_sets():
        e = idempotent(_DIM, I)
        for lam in LAMBDAS:
            inv = _unit_inverse(lam, e)
            lhs = _prod(
                _mat(_N, [[1, 0], [-(y * inv), 1]]),
                _mat(_N, [[1, (e * x).scale(lam)], [0, 1]]),
                _mat(_N, [[1, 0], [y, 1]]),
                _mat(_N, [[1, -(e.scale(lam) * inv * x)], [0, 1]]),
            )
            rhs = _mat(_N, [[1 + (e * x * y).scale(lam), 0], [0, inv]])
            yield f"I={I}, lambda={lam}", lhs == rhs


# ---------------------------------------------------------------------------
# Reflection identities
# ---------------------------------------------------------------------------


def _reflection_lhs(corner: SnElement) -> CornerMatrix:
    x, y = SnElement.x(_DIM, 5), SnElement.y(_DIM, 5)
    return _prod(
        _mat(_N, [[1, 0], [1, 1]]),
        _mat(_N, [[1, -1], [0, 1]]),
        _mat(_N, [[1, 0], [1 - x, 1]]),
        _mat(_N, [[y, 0], [corner, x]]),
        _mat(_N, [[1, x], [0, 1]]),
        _mat(_N, [[1, 0], [-y, 1]]),
    )


def _reflection() -> Iterator[tuple[str, bool]]:
    E00 = matrix_unit(_DIM, [5], [0], [0])
    yield "component 5", _reflection_lhs(E00) == _mat(_N, [[1 - E00.scale(2), 0], [0, 1]])


def _scaled_reflection() -> Iterator[tuple[str, bool]]:
    E00 = matrix_unit(_DIM, [5], [0], [0])
    for I in _idempotent_sets():
        e = idempotent(_DIM, I)
        for lam in LAMBDAS:
            unit = 1 + e.scale(lam)
            lhs = _reflection_lhs(unit * E00)
            rhs = _mat(_N, [[1 - (2 + e.scale(lam)) * E00, 0], [0, 1]])
            split = mat_mul(
                _mat(_N, [[1 - E00.scale(2), 0], [0, 1]]),
                _mat(_N, [[1 + (e * E00).scale(lam), 0], [0, 1]]),
            )
            yield f"I={I}, lambda={lam}", lhs == rhs and rhs == split


def _corner_inverse() -> Iterator[tuple[str, bool]]:
    x, y = SnElement.x(_DIM, 5), SnElement.y(_DIM, 5)
    E00 = matrix_unit(_DIM, [5], [0], [0])
    cases = [("u=1", SnElement.one(_DIM), SnElement.one(_DIM)), ("u=3", SnElement.const(_DIM, 3), SnElement.const(_DIM, Fraction(1, 3)))]
    for I in _idempotent_sets():
        e = idempotent(_DIM, I)
        for lam in LAMBDAS:
            cases.append((f"u=1+{lam}e{I}", 1 + e.scale(lam), _unit_inverse(lam, e)))
    for label, u, u_inv in cases:
        a = _mat(_N, [[y, 0], [u * E00, x]])
        b = _mat(_N, [[x, u_inv * E00], [0, y]])
        yield label, verify_inverse(u, u_inv) and verify_inverse(a, b)


def _unit_and_involution() -> Iterator[tuple[str, bool]]:
    for I in _idempotent_sets():
        e = idempotent(_DIM, I)
        r = 1 - e.scale(2)
        yield f"reflection I={I}", r * r == 1
        for lam in LAMBDAS:
            yield f"inverse I={I}, lambda={lam}", verify_inverse(1 + e.scale(lam), _unit_inverse(lam, e))


# ---------------------------------------------------------------------------
# Two-variable and e_I-twisted identities for theta_12
# ---------------------------------------------------------------------------


def _vars(m: int):
    x1, y1 = SnElement.x(m, 1), SnElement.y(m, 1)
    x2, y2 = SnElement.x(m, 2), SnElement.y(m, 2)
    return x1, y1, x2, y2


def _column_clearing(m: int, twisted: bool) -> CornerMatrix:
    n = m + 1
    x1, y1, x2, y2 = _vars(m)
    eI = idempotent(m, range(3, m + 1)) if twisted else SnElement.one(m)
    return _prod(
        _mat(n, [[1, 0], [-(x2 * y1 * eI), 1]]),
        _mat(n, [[1, (y2 - 1) * x1], [0, 1]]),
        _mat(n, [[1, 0], [y1 * eI, 1]]),
        _mat(n, [[1, -((y2 - 1) * x1)], [0, 1]]),
        _mat(n, [[1, (y2 - 1) * (1 - x2) * x1 * eI], [0, 1]]),
    )


def _column_clearing_plain() -> Iterator[tuple[str, bool]]:
    x1, y1, x2, y2 = _vars(2)
    e2 = idempotent(2, [2])
    rhs = _mat(3, [[1 + (y2 - 1) * x1 * y1, 0], [e2 * y1, x2]])
    yield "S_2", _column_clearing(2, False) == rhs


def _column_clearing_twisted() -> Iterator[tuple[str, bool]]:
    for m in (3, 4, 5):
        x1, y1, x2, y2 = _vars(m)
        e2 = idempotent(m, [2])
        eI = idempotent(m, range(3, m + 1))
        rhs = _mat(m + 1, [[1 + (y2 - 1) * x1 * y1 * eI, 0], [e2 * y1 * eI, 1 + (x2 - 1) * eI]])
        yield f"m={m}", _column_clearing(m, True) == rhs


def _theta_two_variable() -> Iterator[tuple[str, bool]]:
    x1, y1, x2, y2 = _vars(2)
    e2 = idempotent(2, [2])
    lhs = mat_mul(
        _mat(3, [[x2, e2], [0, y2]]),
        _mat(3, [[1 + (y2 - 1) * x1 * y1, 0], [e2 * y1, x2]]),
    )
    yield "J={1,2}", lhs == _mat(3, [[gen_theta(2, 1, 2, [1, 2]), 0], [0, 1]])


def _theta_expansion() -> Iterator[tuple[str, bool]]:
    for m in (3, 4, 5):
        J = range(1, m + 1)
        eI = idempotent(m, range(3, m + 1))
        e1, e2 = idempotent(m, [1]), idempotent(m, [2])
        x1, y1, x2, y2 = _vars(m)
        expected = x2 * e1 * eI + (1 - e1 * eI) * (1 - e2 * eI) + y1 * e2 * eI
        yield f"m={m}", gen_theta(m, 1, 2, J) == expected


def _theta_fixes_complement() -> Iterator[tuple[str, bool]]:
    for m in (3, 4, 5):
        eI = idempotent(m, range(3, m + 1))
        th = gen_theta(m, 1, 2, range(1, m + 1))
        yield f"m={m}", th * (1 - eI) == 1 - eI and (1 - eI) * th == 1 - eI


def _theta_twisted_assembly() -> Iterator[tuple[str, bool]]:
    for m in (3, 4, 5):
        n = m + 1
        x1, y1, x2, y2 = _vars(m)
        e2 = idempotent(m, [2])
        eI = idempotent(m, range(3, m + 1))
        th = gen_theta(m, 1, 2, range(1, m + 1))
        lhs = mat_mul(
            _mat(n, [[x2, e2], [0, y2]]),
            _mat(n, [[1 + (y2 - 1) * x1 * y1 * eI, 0], [e2 * y1 * eI, 1 + (x2 - 1) * eI]]),
        )
        middle = _mat(n, [[th + (x2 - 1) * (1 - eI), e2 * (1 - eI)], [0, eI + (1 - eI) * y2]])
        tail = _mat(n, [[1 + (x2 - 1) * (1 - eI), e2 * (1 - eI)], [0, eI + (1 - eI) * y2]])
        factored = mat_mul(_mat(n, [[th, 0], [0, 1]]), tail)
        yield f"m={m}", lhs == middle and middle == factored


def _reflection_split() -> Iterator[tuple[str, bool]]:
    for m in (3, 4, 5):
        n = m + 1
        x1, y1, x2, y2 = _vars(m)
        e2 = idempotent(m, [2])
        eI = idempotent(m, range(3, m + 1))
        c = 1 - eI
        lhs = _prod(
            _mat(n, [[1, -((x2 - 1 + e2.scale(2)) * c)], [0, 1]]),
            _mat(n, [[1 + (x2 - 1) * c, e2 * c], [0, eI + c * y2]]),
            _mat(n, [[1, 0], [x2, 1]]),
            _mat(n, [[1, (1 - y2) * c], [0, 1]]),
            _mat(n, [[1, 0], [-1 - (x2 - 1) * eI, 1]]),
        )
        target = _mat(n, [[1 - (e2 * c).scale(2), 0], [0, 1]])
        split = mat_mul(
            _mat(n, [[1 - e2.scale(2), 0], [0, 1]]),
            _mat(n, [[1 - (e2 * eI).scale(2), 0], [0, 1]]),
        )
        yield f"m={m}", lhs == target and target == split


# ---------------------------------------------------------------------------
# Group-theoretic identities
# ---------------------------------------------------------------------------


def _commutator(a, a_inv, b, b_inv):
    return a * b * a_inv * b_inv


def _random_unit(rng: random.Random, n: int) -> tuple[SnElement, SnElement]:
    dim = n - 1
    toks = []
    for _ in range(rng.randint(1, 2)):
        kind = rng.random()
        if kind < 0.35:
            i, j = rng.sample(range(1, n), 2) if n > 2 else (1, 1)
            if i != j:
                toks.append(Theta(i, j, (i, j, n)))
                continue
        if kind < 0.7:
            k = rng.randint(1, dim)
            toks.append(Mu((k, n), Fraction(rng.choice([2, -3, 5]), rng.choice([1, 2]))))
        else:
            k = rng.randint(1, dim)
            a = matrix_unit(dim, [k], [rng.randint(0, 1)], [rng.randint(0, 1)]).scale(rng.randint(-2, 2) or 1)
            p, q = rng.sample(range(2), 2)
            toks.append(Elem(p, q, a))
    w = GroupWord(n, tuple(toks))
    return word_element(w), word_element(word_inverse(w))


def _commutator_expansion(samples: int = 50, seed: int = 7) -> Iterator[tuple[str, bool]]:
    rng = random.Random(seed)
    n = 3
    for t in range(samples):
        (a1, a1i), (b1, b1i), (a2, a2i), (b2, b2i) = (_random_unit(rng, n) for _ in range(4))

        def conj(g, gi, x):
            return g * x * gi

        lhs = _commutator(a1 * b1, b1i * a1i, a2 * b2, b2i * a2i)
        rhs = (
            conj(a1, a1i, _commutator(b1, b1i, a2, a2i))
            * conj(a1 * a2, a2i * a1i, _commutator(b1, b1i, b2, b2i))
            * _commutator(a1, a1i, a2, a2i)
            * conj(a2, a2i, _commutator(a1, a1i, b2, b2i))
        )
        yield f"sample {t}", lhs == rhs


def _theta_mu_commutator(case: str) -> Iterator[tuple[str, bool]]:
    for n in (4, 5):
        for i, j in itertools.permutations(range(1, n), 2):
            J = (i, j, n)
            th, th_inv = gen_theta(n, i, j, J), gen_theta(n, j, i, J)
            for k in range(1, n):
                if case == "disjoint" and k in (i, j):
                    continue
                if case == "k=i" and k != i:
                    continue
                if case == "k=j" and k != j:
                    continue
                for lam in LAMBDAS:
                    mu, mu_inv = gen_mu(n, (k, n), lam), gen_mu(n, (k, n), 1 / lam)
                    c = _commutator(th, th_inv, mu, mu_inv)
                    if case == "disjoint":
                        expected = SnElement.one(n)
                    elif case == "k=i":
                        expected = gen_mu(n, J, 1 / lam)
                    else:
                        expected = 1 + (matrix_unit(n, [j], [1], [1]) * idempotent(n, (i, n))).scale(lam - 1)
                    yield f"n={n}, i={i}, j={j}, k={k}, lambda={lam}", c == expected


def _theta_relations() -> Iterator[tuple[str, bool]]:
    for r in range(2, 5):
        for J in itertools.combinations(range(1, 5), r):
            for i, j in itertools.permutations(J, 2):
                yield f"inverse J={J}, ({i},{j})", gen_theta(4, i, j, J) * gen_theta(4, j, i, J) == 1
            if r >= 3:
                for i, j, k in itertools.permutations(J, 3):
                    ok = gen_theta(4, i, j, J) * gen_theta(4, j, k, J) == gen_theta(4, i, k, J)
                    yield f"chain J={J}, ({i},{j},{k})", ok


# ---------------------------------------------------------------------------
# Corner forms and the Whitehead word
# ---------------------------------------------------------------------------


def _mu_corner_form() -> Iterator[tuple[str, bool]]:
    for n in (3, 4):
        for r in range(1, n):
            for inner in itertools.combinations(range(1, n), r):
                I = inner + (n,)
                for lam in LAMBDAS:
                    target = CornerMatrix.diag(n, [1 + idempotent(n - 1, inner).scale(lam - 1)])
                    yield f"n={n}, I={I}, lambda={lam}", as_matrix(gen_mu(n, I, lam)) == target


def _theta_corner_form() -> Iterator[tuple[str, bool]]:
    for n in (3, 4):
        for r in range(2, n):
            for inner in itertools.combinations(range(1, n), r):
                for i, j in itertools.permutations(inner, 2):
                    target = CornerMatrix.diag(n, [gen_theta(n - 1, i, j, inner)])
                    yield f"n={n}, J={inner + (n,)}, ({i},{j})", as_matrix(gen_theta(n, i, j, inner + (n,))) == target


def _whitehead() -> Iterator[tuple[str, bool]]:
    one = SnElement.one(_DIM)
    cases = [(SnElement.const(_DIM, 2), SnElement.const(_DIM, Fraction(1, 2))), (one, one)]
    for I in _idempotent_sets():
        r = 1 - idempotent(_DIM, I).scale(2)
        cases.append((r, r))
    for u, v in cases:
        w = whitehead_diag(_N, u, v)
        yield repr(u), word_eval(w) == CornerMatrix.diag(_N, [u, v])


SUITE: list[tuple[str, str, Callable[[], Iterable[tuple[str, bool]]]]] = [
    ("scalar-shear", "four shears give diag(1+l, 1/(1+l)) times a corner scaling", _scalar_shear),
    ("idempotent-shear", "four shears over K + Ke", lambda: _idempotent_shear(False)),
    ("idempotent-shear-product", "four shears over K + Ke as diag(1 + l e x y, (1+le)^-1)", _idempotent_shear_product),
    ("unit-inverse", "(1+le)^-1 = 1 - l/(1+l) e and (1-2e)^2 = 1", _unit_and_involution),
    ("reflection-word", "six elementary factors around (y 0; E00 x) give diag(1-2E00, 1)", _reflection),
    ("corner-inverse", "(y 0; u E00 x)^-1 = (x u^-1 E00; 0 y)", _corner_inverse),
    ("scaled-reflection-word", "reflection word with (1+le)E00 and its split", _scaled_reflection),
    ("column-clearing", "five elementary factors give (1+(y2-1)x1y1 0; e2y1 x2)", _column_clearing_plain),
    ("theta-two-variable", "(x2 e2; 0 y2) times the cleared column is diag(theta12, 1)", _theta_two_variable),
    ("column-clearing-twisted", "five elementary factors with e_I twists", _column_clearing_twisted),
    ("theta-expansion", "theta12(J) = x2 e1 eI + (1-e1eI)(1-e2eI) + y1 e2 eI", _theta_expansion),
    ("theta-twisted-assembly", "(x2 e2; 0 y2) times the twisted block, factored through diag(theta12(J), 1)", _theta_twisted_assembly),
    ("theta-fixes-complement", "theta12(J)(1 - eI) = 1 - eI", _theta_fixes_complement),
    ("reflection-split", "five factors give diag(1-2e2(1-eI), 1) = diag(1-2e2) diag(1-2e2eI)", _reflection_split),
    ("sandwich-shear", "four shears with e y in the lower corners", lambda: _idempotent_shear(True)),
    ("commutator-expansion", "[a1b1, a2b2] expanded through inner automorphisms", _commutator_expansion),
    ("theta-mu-commutator-disjoint", "[theta_ij, mu_{k,n}] = 1 for k outside {i, j}", lambda: _theta_mu_commutator("disjoint")),
    ("theta-mu-commutator-k-eq-i", "[theta_ij, mu_{i,n}(l)] = mu_J(l)^-1", lambda: _theta_mu_commutator("k=i")),
    ("theta-mu-commutator-k-eq-j", "[theta_ij, mu_{j,n}(l)] = 1 + (l-1) E11(j) e_i e_n", lambda: _theta_mu_commutator("k=j")),
    ("theta-relations", "theta_ij theta_ji = 1 and theta_ij theta_jk = theta_ik", _theta_relations),
    ("mu-corner-form", "mu_I(l) is diag(1 + (l-1) e_{I-n})", _mu_corner_form),
    ("theta-corner-form", "theta_ij(J) is diag(theta_ij(J-n))", _theta_corner_form),
    ("whitehead-diagonal", "six-token word for diag(u, u^-1)", _whitehead),
]


def run_identity(ident: str) -> IdentityResult:
    for key, label, fn in SUITE:
        if key == ident:
            res = IdentityResult(key, label, "pass")
            for name, ok in fn():
                res.instances += 1
                if not ok:
                    res.failures.append(name)
            if res.failures or not res.instances:
                res.status = "fail"
            return res
    raise KeyError(ident)


def identity_suite() -> list[IdentityResult]:
    return [run_identity(key) for key, _, _ in SUITE]
