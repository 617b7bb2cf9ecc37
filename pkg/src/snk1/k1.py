"""Determinant-type homomorphisms, the K_1 decomposition and membership tests.

Conventions: the ambient algebra is S_n and its last component n is the
distinguished one, so congruence units live in 1 + p_n and are read as
matrices over S_{n-1}.  A support is a nonempty subset of 1..n-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .core_algebra import (
    IdealSpec,
    IndexRangeError,
    SnElement,
    ideal_level,
    in_ideal,
    to_split,
    unit_components,
)
from .laurent import (
    LaurentCornerMatrix,
    LaurentElement,
    LaurentUnit,
    as_unit_monomial,
    block_det,
    deg_xj,
    laurent_det,
    laurent_reduce,
)
from .matrix_group import CornerMatrix, Theta, gen_mu, gen_theta, mat_mul


class NotInLevel(ValueError):
    """u - 1 does not lie in a_{n,s}."""


class NotInCongruenceIdeal(ValueError):
    """a - 1 does not lie in p * p_n."""


class StructuralAnomaly(ArithmeticError):
    """A value that cannot occur for a genuine unit (caller passed a non-unit)."""


# ---------------------------------------------------------------------------
# det-bar
# ---------------------------------------------------------------------------


def bdet(u: CornerMatrix) -> LaurentUnit:
    """Determinant of the entrywise Laurent reduction of u."""
    vars = tuple(range(1, u.dim + 1))
    entries = {rc: laurent_reduce(v) for rc, v in u.entries.items()}
    return as_unit_monomial(laurent_det(LaurentCornerMatrix(vars, entries)))


# ---------------------------------------------------------------------------
# det_I and deg_{n,I,j}
# ---------------------------------------------------------------------------


def _normalize_set(I: Iterable[int], n: int) -> tuple[int, ...]:
    I = tuple(sorted(set(I)))
    for i in I:
        if not 1 <= i <= n:
            raise IndexRangeError(f"index {i} outside 1..{n}")
    return I


def _level_blocks(u: SnElement, s: int) -> dict[tuple[int, ...], dict]:
    """Split u - 1 and group its level-s terms by their unit pattern I.

    Returns I -> {(alpha, beta): {laurent exponent over CI: coeff}}.  Terms
    with more than s unit factors lie in a_{n,s+1} and are dropped.
    """
    n = u.n
    d = u - 1
    if ideal_level(d) < s:
        raise NotInLevel(f"u - 1 is not in a_{{{n},{s}}}")
    blocks: dict[tuple[int, ...], dict] = {}
    for key, c in to_split(d).items():
        units = unit_components(key)
        if len(units) != s:
            continue
        I = tuple(sorted(units))
        alpha = tuple(key[i - 1].a for i in I)
        beta = tuple(key[i - 1].b for i in I)
        expo = []
        for k, f in enumerate(key, start=1):
            if k in units:
                continue
            expo.append(f.a if f.kind == "x" else -f.a if f.kind == "y" else 0)
        cell = blocks.setdefault(I, {}).setdefault((alpha, beta), {})
        e = tuple(expo)
        cell[e] = cell.get(e, 0) + c
    return blocks


def _block_determinant(cells: dict, vars: tuple[int, ...]) -> LaurentUnit:
    labels = sorted({a for a, _ in cells} | {b for _, b in cells})
    pos = {lab: k for k, lab in enumerate(labels)}
    one = LaurentElement.const(vars, 1)
    zero = LaurentElement.const(vars, 0)
    rows = [[one if r == c else zero for c in range(len(labels))] for r in range(len(labels))]
    for (alpha, beta), terms in cells.items():
        r, c = pos[alpha], pos[beta]
        rows[r][c] = rows[r][c] + LaurentElement(vars, terms)
    return as_unit_monomial(block_det(rows, vars))


def det_I(u: SnElement, I: Iterable[int]) -> LaurentUnit:
    """det_I(u) in the Laurent ring on the complement CI of I.

    Requires u - 1 in a_{n,s} with s = |I| < n.
    """
    n = u.n
    I = _normalize_set(I, n)
    if not 1 <= len(I) < n:
        raise IndexRangeError(f"need 1 <= |I| < {n}")
    vars = tuple(k for k in range(1, n + 1) if k not in I)
    cells = _level_blocks(u, len(I)).get(I, {})
    return _block_determinant(cells, vars)


def deg_nIj(u: SnElement, I: Iterable[int], j: int) -> int:
    """The x_j degree of det_I(u); j must lie outside I."""
    I = _normalize_set(I, u.n)
    if j in I or not 1 <= j <= u.n:
        raise IndexRangeError(f"j = {j} must lie in the complement of {I}")
    return deg_xj(det_I(u, I), j)


# ---------------------------------------------------------------------------
# psi' and chi_J
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeVector:
    """Finitely supported integer vector indexed by pairs (j, I), j not in I."""

    coords: dict[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coords", {k: v for k, v in self.coords.items() if v})

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return LatticeVector(out)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector({k: -v for k, v in self.coords.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(frozenset(self.coords.items()))

    def is_zero(self) -> bool:
        return not self.coords

    @classmethod
    def basis(cls, j: int, I: Iterable[int], c: int = 1) -> "LatticeVector":
        return cls({(j, tuple(sorted(I))): c})


def psi_prime(u: SnElement, s: int) -> LatticeVector:
    """Coordinates deg_{n,I,j}(u) over all |I| = s and j outside I."""
    n = u.n
    if not 1 <= s < n:
        raise IndexRangeError(f"level {s} outside 1..{n - 1}")
    coords = {}
    for I, cells in _level_blocks(u, s).items():
        vars = tuple(k for k in range(1, n + 1) if k not in I)
        d = _block_determinant(cells, vars)
        for j, e in zip(vars, d.expo):
            if e:
                coords[(j, I)] = e
    return LatticeVector(coords)


def chi_J(v: LatticeVector, J: Iterable[int]) -> int:
    """Sum of the coordinates (j, I) with {j} + I = J."""
    J = frozenset(J)
    return sum(c for (j, I), c in v.coords.items() if frozenset(I) | {j} == J)


# ---------------------------------------------------------------------------
# Decomposition in GL_infinity(S_{n-1}, p)
# ---------------------------------------------------------------------------


def _support(support: Iterable[int], n: int) -> tuple[int, ...]:
    support = tuple(sorted(set(support)))
    if not support:
        raise IndexRangeError("support must be nonempty")
    for k in support:
        if not 1 <= k < n:
            raise IndexRangeError(f"support index {k} outside 1..{n - 1}")
    return support


def theta_pairs(support: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs (i, j) with i > j in the support, ordered lexicographically."""
    return sorted((i, j) for i in support for j in support if i > j)


@dataclass
class DecompositionReport:
    n: int
    support: tuple[int, ...]
    n_ij: dict[tuple[int, int], int]
    lambda_k: dict[int, Fraction]
    residual: SnElement
    is_elementary: bool

    def prefix(self) -> SnElement:
        """prod theta_ij^{n_ij} * prod mu_{k,n}(lambda_k)."""
        out = SnElement.one(self.n)
        for (i, j), e in self.n_ij.items():
            out = out * _theta_power(self.n, i, j, e)
        for k, lam in self.lambda_k.items():
            out = out * gen_mu(self.n, (k, self.n), lam)
        return out

    def recompose(self) -> SnElement:
        return self.prefix() * self.residual

    def to_json(self) -> dict:
        from .parser import format_element, format_scalar

        return {
            "n_ij": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.n_ij.items())],
            "lambda": [{"k": k, "value": format_scalar(v)} for k, v in sorted(self.lambda_k.items())],
            "residual": format_element(self.residual),
            "is_elementary": self.is_elementary,
        }


def _theta_power(n: int, i: int, j: int, e: int) -> SnElement:
    if e == 0:
        return SnElement.one(n)
    a, b = (i, j) if e > 0 else (j, i)
    return gen_theta(n, a, b, (i, j, n)) ** abs(e)


def decompose(a: SnElement, support: Iterable[int], n: int | None = None) -> DecompositionReport:
    """Write a = prod theta_ij^{n_ij} prod mu_{k,n}(lambda_k) e with e p-elementary.

    ``a`` is assumed to be a unit; only the congruence condition
    a - 1 in p * p_n is checked.
    """
    if n is None:
        n = a.n
    if n != a.n:
        raise IndexRangeError(f"the distinguished index must be the last component {a.n}")
    support = _support(support, n)
    if not in_ideal(a - 1, IdealSpec.p_pn(support, n)):
        raise NotInCongruenceIdeal(f"a - 1 is not in p*p_{n} for support {support}")
    pairs = theta_pairs(support)
    exps = {(i, j): deg_nIj(a, (i, n), j) for i, j in pairs}
    stripped = a
    for (i, j), e in exps.items():
        stripped = stripped * _theta_power(n, i, j, -e)
    lambdas: dict[int, Fraction] = {}
    for k in support:
        d = det_I(stripped, (k, n))
        if not d.is_scalar():
            raise StructuralAnomaly(f"det_{{{k},{n}}} is not a scalar: input is not a congruence unit")
        lambdas[k] = d.coeff
    # e = (prod theta^n prod mu)^-1 a, inverses taken factor by factor
    residual = SnElement.one(n)
    for k in reversed(support):
        residual = residual * gen_mu(n, (k, n), 1 / lambdas[k])
    for (i, j) in reversed(pairs):
        residual = residual * _theta_power(n, i, j, -exps[(i, j)])
    residual = residual * a
    elementary = all(v == 0 for v in exps.values()) and all(v == 1 for v in lambdas.values())
    return DecompositionReport(n, support, exps, lambdas, residual, elementary)


def is_elementary_product(a: SnElement, support: Iterable[int], n: int | None = None) -> bool:
    """True iff a lies in E_infinity(S_{n-1}, p): all n_ij vanish and all lambda_k are 1."""
    return decompose(a, support, n).is_elementary


def decompose_full_gl(a: CornerMatrix) -> tuple[Fraction, CornerMatrix]:
    """Split a = mu_n(lambda) e with lambda = det-bar(a) and e elementary."""
    d = bdet(a)
    if not d.is_scalar():
        raise StructuralAnomaly(f"det-bar has nonzero exponent {d.expo}: input is not a unit")
    lam = d.coeff
    e = mat_mul(CornerMatrix.diag(a.n, [1 / lam]), a)
    return lam, e


# ---------------------------------------------------------------------------
# Generators and K_1 reports
# ---------------------------------------------------------------------------


def _check_level(n: int, s: int) -> None:
    if n < 3 or not 2 <= s <= n - 1:
        raise IndexRangeError(f"need n >= 3 and 2 <= s <= n-1, got n={n}, s={s}")


def _subsets_with_n(n: int, s: int) -> Iterable[tuple[int, ...]]:
    # |J| = s + 1 with n in J, in lexicographic order
    for rest in itertools.combinations(range(1, n), s):
        yield rest + (n,)


def enumerate_generators(n: int, s: int, support: Iterable[int] | None = None) -> list[Theta]:
    """The theta generators at level s for 1 + p_n, or for 1 + p*p_n given a support."""
    _check_level(n, s)
    out: list[Theta] = []
    if support is None:
        for J in _subsets_with_n(n, s):
            m = max(J[:-1])
            out.extend(Theta(m, j, J) for j in J[:-1] if j != m)
        return out
    supp = set(_support(support, n))
    for i in sorted(supp):
        for J in _subsets_with_n(n, s):
            if supp.intersection(J) != {i}:
                continue
            inner = [k for k in J if k not in (n, i)]
            m = max(inner)
            out.extend(Theta(m, j, J) for j in inner if j != m)
    for J in _subsets_with_n(n, s):
        if len(supp.intersection(J)) < 2:
            continue
        m = max(J[:-1])
        out.extend(Theta(m, j, J) for j in J[:-1] if j != m)
    return out


def all_generators(n: int, support: Iterable[int] | None = None) -> list[Theta]:
    support = None if support is None else tuple(support)
    out: list[Theta] = []
    for s in range(2, n):
        out.extend(enumerate_generators(n, s, support))
    return out


def expected_generator_count(n: int) -> int:
    """Closed form (N - 2) 2^(N - 1) + 1 for matrices over S_N, N = n - 1 >= 2."""
    N = n - 1
    return (N - 2) * 2 ** (N - 1) + 1


@dataclass
class K1Report:
    case: str
    support: tuple[int, ...] | None
    structure: str
    generator_count: int
    generators: list[Theta]
    k1_generators: list[str]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "support": list(self.support) if self.support else None,
            "structure": self.structure,
            "generator_count": self.generator_count,
            "generators": [f"theta_{t.i}{t.j}({set(t.J)})" for t in self.generators],
            "k1_generators": self.k1_generators,
        }


def _fmt_set(J: Iterable[int]) -> str:
    return "{" + ",".join(str(k) for k in J) + "}"


def k1_report(n: int, support: Iterable[int] | None = None) -> K1Report:
    """K_1 of S_{n-1}, or of the pair (S_{n-1}, p) when a support is given."""
    if n < 2:
        raise IndexRangeError("need ambient n >= 2")
    if support is None:
        gens = all_generators(n) if n >= 3 else []
        return K1Report("Full", None, "K*", len(gens), gens, [f"mu_{{{n}}}(lambda), lambda in K*"])
    supp = _support(support, n)
    m = len(supp)
    structure = "K*" if m == 1 else f"Z^{comb(m, 2)} x (K*)^{m}"
    gens = all_generators(n, supp) if n >= 3 else []
    named = [f"theta_{i}{j}({_fmt_set((j, i, n))})" for i, j in theta_pairs(supp)]
    named += [f"mu_{_fmt_set((k, n))}(lambda), lambda in K*" for k in supp]
    return K1Report("Congruence", supp, structure, len(gens), gens, named)
