"""Laurent polynomials over the rationals and determinants of corner matrices.

A :class:`LaurentElement` lives in K[x_v, x_v^-1 : v in vars] for a fixed,
sorted tuple of variable indices.  Exponent vectors are stored in the order
of ``vars``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core_algebra import ScalarLike, SnElement, scalar, to_split

Exponent = tuple[int, ...]


class NotAUnit(ArithmeticError):
    """Raised when a Laurent element is not of the form c * x^gamma, c != 0."""


class NonScalarComponent(ValueError):
    """Raised when a component kept by laurent_reduce carries a nonscalar factor."""


class LaurentElement:
    __slots__ = ("vars", "_terms")

    def __init__(self, vars: Iterable[int], terms: Mapping[Exponent, ScalarLike] | None = None):
        self.vars = tuple(vars)
        if list(self.vars) != sorted(set(self.vars)):
            raise ValueError(f"variables must be sorted and distinct: {self.vars}")
        out: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = scalar(c)
            if c:
                out[tuple(e)] = out.get(tuple(e), 0) + c
        self._terms = {e: c for e, c in out.items() if c}

    @classmethod
    def _raw(cls, vars: tuple[int, ...], terms: dict[Exponent, Fraction]) -> "LaurentElement":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj._terms = terms
        return obj

    @classmethod
    def const(cls, vars: Iterable[int], c: ScalarLike = 1) -> "LaurentElement":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars: Iterable[int], expo: Iterable[int], c: ScalarLike = 1) -> "LaurentElement":
        return cls(tuple(vars), {tuple(expo): c})

    @classmethod
    def var(cls, vars: Iterable[int], j: int, power: int = 1) -> "LaurentElement":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(j)] = power
        return cls(vars, {tuple(e): 1})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentElement):
            return self.vars == other.vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentElement.const(self.vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentElement({self.vars}, {format_laurent(self)!r})"

    def _check(self, other) -> "LaurentElement":
        if isinstance(other, (int, Fraction)):
            return LaurentElement.const(self.vars, other)
        if other.vars != self.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")
        return other

    def __add__(self, other) -> "LaurentElement":
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentElement._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentElement":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "LaurentElement":
        return self._check(other) - self

    def __mul__(self, other) -> "LaurentElement":
        other = self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentElement._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def trailing(self) -> tuple[Exponent, Fraction]:
        e = min(self._terms)
        return e, self._terms[e]


def exact_divide(f: LaurentElement, g: LaurentElement) -> LaurentElement:
    """Return q with f = g * q; raise ArithmeticError if g does not divide f.

    Lexicographic order on Z^m is a group order, so leading and trailing terms
    of a product are the products of leading and trailing terms.  Peeling off
    leading terms therefore finds q in |q| steps, and the quotient can never
    drop below trailing(f) / trailing(g).
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero Laurent element")
    if f.vars != g.vars:
        raise ValueError("variable sets differ")
    if f.is_zero():
        return LaurentElement._raw(f.vars, {})
    ge, gc = g.leading()
    floor = tuple(a - b for a, b in zip(f.trailing()[0], g.trailing()[0]))
    q: dict[Exponent, Fraction] = {}
    r = f
    while not r.is_zero():
        re, rc = r.leading()
        qe = tuple(a - b for a, b in zip(re, ge))
        if qe < floor:
            raise ArithmeticError("inexact Laurent division")
        qc = rc / gc
        q[qe] = qc
        r = r - g * LaurentElement._raw(f.vars, {qe: qc})
    return LaurentElement._raw(f.vars, q)


@dataclass(frozen=True)
class LaurentUnit:
    """c * x^expo with c != 0; a unit of the Laurent ring."""

    coeff: Fraction
    expo: tuple[int, ...]
    vars: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.coeff:
            raise ValueError("unit coefficient must be nonzero")
        if len(self.expo) != len(self.vars):
            raise ValueError("exponent vector does not match variables")

    def as_element(self) -> LaurentElement:
        return LaurentElement.monomial(self.vars, self.expo, self.coeff)

    def is_scalar(self) -> bool:
        return not any(self.expo)

    def __mul__(self, other: "LaurentUnit") -> "LaurentUnit":
        if self.vars != other.vars:
            raise ValueError("variable sets differ")
        return LaurentUnit(
            self.coeff * other.coeff, tuple(a + b for a, b in zip(self.expo, other.expo)), self.vars
        )

    def inverse(self) -> "LaurentUnit":
        return LaurentUnit(1 / self.coeff, tuple(-a for a in self.expo), self.vars)


def as_unit_monomial(a: LaurentElement) -> LaurentUnit:
    if len(a) != 1:
        raise NotAUnit(f"{format_laurent(a)} is not a monomial unit")
    (e, c), = a.items()
    return LaurentUnit(c, e, a.vars)


def deg_xj(u: LaurentUnit, j: int) -> int:
    if j not in u.vars:
        raise ValueError(f"x_{j} is not a variable of {u.vars}")
    return u.expo[u.vars.index(j)]


# ---------------------------------------------------------------------------
# Corner matrices and determinants
# ---------------------------------------------------------------------------


class LaurentCornerMatrix:
    """An N x N matrix over a Laurent ring, identity outside finitely many entries.

    ``entries`` hold full entry values; positions not listed follow the
    identity pattern.
    """

    def __init__(self, vars: Iterable[int], entries: Mapping[tuple[int, int], LaurentElement | ScalarLike]):
        self.vars = tuple(vars)
        self.entries: dict[tuple[int, int], LaurentElement] = {}
        for (r, c), v in entries.items():
            if not isinstance(v, LaurentElement):
                v = LaurentElement.const(self.vars, v)
            if v.vars != self.vars:
                raise ValueError("entry over a different Laurent ring")
            if v != (1 if r == c else 0):
                self.entries[(r, c)] = v

    def extent(self) -> int:
        if not self.entries:
            return 0
        return 1 + max(max(r, c) for r, c in self.entries)

    def __getitem__(self, rc: tuple[int, int]) -> LaurentElement:
        r, c = rc
        if rc in self.entries:
            return self.entries[rc]
        return LaurentElement.const(self.vars, 1 if r == c else 0)

    def block(self) -> list[list[LaurentElement]]:
        k = self.extent()
        return [[self[r, c] for c in range(k)] for r in range(k)]

    def __mul__(self, other: "LaurentCornerMatrix") -> "LaurentCornerMatrix":
        k = max(self.extent(), other.extent())
        zero = LaurentElement.const(self.vars, 0)
        out = {}
        for r in range(k):
            for c in range(k):
                acc = zero
                for t in range(k):
                    acc = acc + self[r, t] * other[t, c]
                out[(r, c)] = acc
        return LaurentCornerMatrix(self.vars, out)


def _det_cofactor(rows: list[list[LaurentElement]], zero: LaurentElement) -> LaurentElement:
    k = len(rows)
    if k == 0:
        return zero + 1
    if k == 1:
        return rows[0][0]
    total = zero
    for c in range(k):
        entry = rows[0][c]
        if entry.is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in rows[1:]]
        term = entry * _det_cofactor(minor, zero)
        total = total + term if c % 2 == 0 else total - term
    return total


def _det_bareiss(rows: list[list[LaurentElement]], zero: LaurentElement) -> LaurentElement:
    m = [list(r) for r in rows]
    k = len(m)
    sign = 1
    prev = zero + 1
    for p in range(k - 1):
        if m[p][p].is_zero():
            swap = next((r for r in range(p + 1, k) if not m[r][p].is_zero()), None)
            if swap is None:
                return zero
            m[p], m[swap] = m[swap], m[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                m[i][j] = exact_divide(m[i][j] * m[p][p] - m[i][p] * m[p][j], prev)
        prev = m[p][p]
    det = m[k - 1][k - 1]
    return det if sign > 0 else -det


def block_det(rows: list[list[LaurentElement]], vars: tuple[int, ...], method: str = "auto") -> LaurentElement:
    zero = LaurentElement.const(vars, 0)
    if method == "cofactor" or (method == "auto" and len(rows) <= 4):
        return _det_cofactor(rows, zero)
    if not rows:
        return zero + 1
    return _det_bareiss(rows, zero)


def laurent_det(m: LaurentCornerMatrix, method: str = "auto") -> LaurentElement:
    """Determinant of the finite corner (identity outside it).

    Cofactor expansion up to 4x4, fraction-free Bareiss elimination above.
    """
    return block_det(m.block(), m.vars, method)


def format_laurent(a: LaurentElement) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in sorted(a.items(), reverse=True):
        mono = "*".join(
            f"x{v}" if k == 1 else f"x{v}^{k}" if k > 0 else f"x{v}^({k})"
            for v, k in zip(a.vars, e)
            if k
        )
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# Quotient map S_n -> Laurent ring
# ---------------------------------------------------------------------------


def laurent_reduce(a: SnElement, drop: Iterable[int] | None = None) -> LaurentElement:
    """Reduce ``a`` modulo the matrix-unit ideals of the components in ``drop``.

    x_i maps to x_i, y_i to x_i^-1 and every matrix unit of a dropped
    component to 0.  Components outside ``drop`` must carry only scalars.
    ``drop=None`` drops all components.
    """
    drop = tuple(range(1, a.n + 1)) if drop is None else tuple(sorted(set(drop)))
    for i in drop:
        if not 1 <= i <= a.n:
            raise ValueError(f"component {i} outside 1..{a.n}")
    pos = [i - 1 for i in drop]
    kept = [k for k in range(a.n) if k + 1 not in drop]
    out: dict[Exponent, Fraction] = {}
    for key, c in to_split(a).items():
        if any(key[k].kind != "1" for k in kept):
            raise NonScalarComponent(f"component {[k + 1 for k in kept]} is not scalar in {a!r}")
        expo = []
        for k in pos:
            f = key[k]
            if f.kind == "E":
                break
            expo.append(f.a if f.kind == "x" else -f.a if f.kind == "y" else 0)
        else:
            e = tuple(expo)
            out[e] = out.get(e, 0) + c
    return LaurentElement(drop, out)
