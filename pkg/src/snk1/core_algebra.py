"""Exact arithmetic in the algebra S_n of one-sided inverses.

S_n is generated by x_1..x_n, y_1..y_n with y_i x_i = 1 and all generators of
distinct indices commuting.  Elements are stored in the normal-form basis
x^alpha y^beta; a second "split" basis (scalars, positive x-powers, positive
y-powers, matrix units, tensored over the components) is computed on demand
for ideal-membership tests and quotient maps.

Indices of components are 1-based everywhere in the public API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

# A normal-form monomial x^alpha y^beta.
Monomial = tuple[tuple[int, ...], tuple[int, ...]]


class DimensionMismatch(ValueError):
    pass


class IndexRangeError(ValueError):
    pass


def scalar(value: ScalarLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _check_index_set(indices: Iterable[int], n: int) -> tuple[int, ...]:
    idx = tuple(sorted(set(indices)))
    for i in idx:
        if not 1 <= i <= n:
            raise IndexRangeError(f"component index {i} outside 1..{n}")
    return idx


# ---------------------------------------------------------------------------
# Normal-form elements
# ---------------------------------------------------------------------------


class SnElement:
    """A finite linear combination of monomials x^alpha y^beta in S_n.

    Values are immutable.  ``terms`` maps ``(alpha, beta)`` to a nonzero
    Fraction; the zero element is the empty map.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, ScalarLike] | None = None):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        clean: dict[Monomial, Fraction] = {}
        for (alpha, beta), c in (terms or {}).items():
            if len(alpha) != n or len(beta) != n:
                raise DimensionMismatch(f"monomial {(alpha, beta)} is not over {n} components")
            if any(a < 0 for a in alpha) or any(b < 0 for b in beta):
                raise ValueError("exponents must be non-negative")
            c = scalar(c)
            if c:
                clean[(tuple(alpha), tuple(beta))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Fraction]) -> "SnElement":
        # Trusted constructor: terms already pruned and well-formed.
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SnElement":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c: ScalarLike = 1) -> "SnElement":
        c = scalar(c)
        z = (0,) * n
        return cls._raw(n, {(z, z): c} if c else {})

    @classmethod
    def one(cls, n: int) -> "SnElement":
        return cls.const(n, 1)

    @classmethod
    def monomial(cls, n: int, alpha: Iterable[int], beta: Iterable[int], c: ScalarLike = 1) -> "SnElement":
        return cls(n, {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "SnElement":
        _check_index_set([i], n)
        alpha = [0] * n
        alpha[i - 1] = power
        return cls.monomial(n, alpha, (0,) * n)

    @classmethod
    def y(cls, n: int, i: int, power: int = 1) -> "SnElement":
        _check_index_set([i], n)
        beta = [0] * n
        beta[i - 1] = power
        return cls.monomial(n, (0,) * n, beta)

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        z = (0,) * self.n
        return all(m == (z, z) for m in self._terms)

    def scalar_part(self) -> Fraction:
        z = (0,) * self.n
        return self._terms.get((z, z), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SnElement):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SnElement.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in lexicographic order on (alpha, beta)."""
        return sorted(self._terms.items())

    def __repr__(self) -> str:
        from .parser import format_element

        return f"SnElement({self.n}, {format_element(self)!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "SnElement":
        if isinstance(other, SnElement):
            if other.n != self.n:
                raise DimensionMismatch(f"S_{self.n} vs S_{other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return SnElement.const(self.n, other)
        raise TypeError(f"cannot combine SnElement with {type(other).__name__}")

    def __add__(self, other) -> "SnElement":
        return ring_linear(self, self._coerce(other), 1, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "SnElement":
        return ring_linear(self, self._coerce(other), 1, -1)

    def __rsub__(self, other) -> "SnElement":
        return ring_linear(self._coerce(other), self, 1, -1)

    def __neg__(self) -> "SnElement":
        return SnElement._raw(self.n, {m: -c for m, c in self._terms.items()})

    def scale(self, c: ScalarLike) -> "SnElement":
        c = scalar(c)
        if not c:
            return SnElement.zero(self.n)
        return SnElement._raw(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> "SnElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return nf_mul(self, self._coerce(other))

    def __rmul__(self, other) -> "SnElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "SnElement":
        if k < 0:
            raise ValueError("negative powers are not defined for raw elements")
        result = SnElement.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------------

    def permute(self, perm: Mapping[int, int]) -> "SnElement":
        """Relabel components: component i moves to component perm[i].

        ``perm`` must be a bijection on a subset of 1..n; unlisted components
        stay in place.
        """
        target = list(range(1, self.n + 1))
        for src, dst in perm.items():
            target[src - 1] = dst
        if sorted(target) != list(range(1, self.n + 1)):
            raise ValueError(f"{dict(perm)} is not a permutation of 1..{self.n}")
        out: dict[Monomial, Fraction] = {}
        for (alpha, beta), c in self._terms.items():
            a = [0] * self.n
            b = [0] * self.n
            for k in range(self.n):
                a[target[k] - 1] = alpha[k]
                b[target[k] - 1] = beta[k]
            out[(tuple(a), tuple(b))] = c
        return SnElement._raw(self.n, out)

    def extend(self, n: int) -> "SnElement":
        """Embed S_m into S_n (n >= m) on the first m components."""
        if n < self.n:
            raise DimensionMismatch("cannot shrink an element")
        pad = (0,) * (n - self.n)
        return SnElement._raw(n, {(a + pad, b + pad): c for (a, b), c in self._terms.items()})

    def restrict(self, n: int) -> "SnElement":
        """Inverse of :meth:`extend`; the dropped components must be trivial."""
        out = {}
        for (a, b), c in self._terms.items():
            if any(a[n:]) or any(b[n:]):
                raise DimensionMismatch(f"element uses components beyond {n}")
            out[(a[:n], b[:n])] = c
        return SnElement._raw(n, out)


def ring_linear(a: SnElement, b: SnElement, lam: ScalarLike, mu: ScalarLike) -> SnElement:
    """lam*a + mu*b with zero coefficients pruned."""
    if a.n != b.n:
        raise DimensionMismatch(f"S_{a.n} vs S_{b.n}")
    lam, mu = scalar(lam), scalar(mu)
    out: dict[Monomial, Fraction] = {}
    if lam:
        for m, c in a._terms.items():
            out[m] = lam * c
    if mu:
        for m, c in b._terms.items():
            v = out.get(m, 0) + mu * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SnElement._raw(a.n, out)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    a, b = m1
    c, d = m2
    alpha = []
    beta = []
    for ai, bi, ci, di in zip(a, b, c, d):
        if ci >= bi:
            alpha.append(ai + ci - bi)
            beta.append(di)
        else:
            alpha.append(ai)
            beta.append(di + bi - ci)
    return tuple(alpha), tuple(beta)


def nf_mul(a: SnElement, b: SnElement) -> SnElement:
    """Product in normal form.

    Per component, (x^a y^b)(x^c y^d) = x^(a + max(c-b, 0)) y^(d + max(b-c, 0)).
    """
    if a.n != b.n:
        raise DimensionMismatch(f"S_{a.n} vs S_{b.n}")
    out: dict[Monomial, Fraction] = {}
    get = out.get
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            m = _mono_mul(m1, m2)
            out[m] = get(m, 0) + c1 * c2
    return SnElement._raw(a.n, {m: c for m, c in out.items() if c})


def product(factors: Iterable[SnElement], n: int) -> SnElement:
    result = SnElement.one(n)
    for f in factors:
        result = nf_mul(result, f)
    return result


# ---------------------------------------------------------------------------
# Named elements
# ---------------------------------------------------------------------------


def matrix_unit(n: int, I: Iterable[int], alpha: Iterable[int], beta: Iterable[int]) -> SnElement:
    """E_{alpha beta}(I): product over i in I of x_i^a y_i^b - x_i^(a+1) y_i^(b+1).

    ``alpha`` and ``beta`` list exponents in the order of ``I`` as given.
    """
    I = list(I)
    alpha, beta = list(alpha), list(beta)
    if not I:
        raise IndexRangeError("matrix_unit needs a nonempty index set")
    if len(set(I)) != len(I):
        raise IndexRangeError(f"repeated index in {I}")
    if len(alpha) != len(I) or len(beta) != len(I):
        raise ValueError("exponent vectors must match the index set")
    _check_index_set(I, n)
    if any(v < 0 for v in alpha + beta):
        raise ValueError("matrix unit indices must be non-negative")
    result = SnElement.one(n)
    for i, p, q in zip(I, alpha, beta):
        result = nf_mul(result, _unit1(n, i, p, q))
    return result


def _unit1(n: int, i: int, p: int, q: int) -> SnElement:
    a0 = [0] * n
    b0 = [0] * n
    a1 = [0] * n
    b1 = [0] * n
    a0[i - 1], b0[i - 1] = p, q
    a1[i - 1], b1[i - 1] = p + 1, q + 1
    return SnElement._raw(
        n, {(tuple(a0), tuple(b0)): Fraction(1), (tuple(a1), tuple(b1)): Fraction(-1)}
    )


def idempotent(n: int, I: Iterable[int]) -> SnElement:
    """e_I = E_00(I) = prod_{i in I} (1 - x_i y_i); e_{} = 1."""
    I = _check_index_set(I, n)
    if not I:
        return SnElement.one(n)
    return matrix_unit(n, I, [0] * len(I), [0] * len(I))


# ---------------------------------------------------------------------------
# Split basis
# ---------------------------------------------------------------------------


class SplitFactor(NamedTuple):
    """One tensor factor of the split basis of S_1.

    kind is one of "1" (scalar), "x" (x^a, a >= 1), "y" (y^a, a >= 1) or
    "E" (matrix unit E_ab).
    """

    kind: str
    a: int = 0
    b: int = 0

    def __str__(self) -> str:
        if self.kind == "1":
            return "1"
        if self.kind == "E":
            return f"E{self.a},{self.b}"
        return f"{self.kind}^{self.a}"

    @property
    def is_unit(self) -> bool:
        return self.kind == "E"


ONE = SplitFactor("1")


def XPow(m: int) -> SplitFactor:
    if m < 1:
        raise ValueError("XPow exponent must be >= 1")
    return SplitFactor("x", m)


def YPow(m: int) -> SplitFactor:
    if m < 1:
        raise ValueError("YPow exponent must be >= 1")
    return SplitFactor("y", m)


def Unit(p: int, q: int) -> SplitFactor:
    if p < 0 or q < 0:
        raise ValueError("matrix unit indices must be non-negative")
    return SplitFactor("E", p, q)


SplitKey = tuple[SplitFactor, ...]


@dataclass(frozen=True)
class SplitElement:
    n: int
    terms: Mapping[SplitKey, Fraction]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SplitElement):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def items(self):
        return self.terms.items()


def _split_component(a: int, b: int) -> list[tuple[SplitFactor, int]]:
    # x^a y^b in the basis K + xK[x] + yK[y] + F of S_1
    if a >= b:
        d = a - b
        lead = XPow(d) if d else ONE
        return [(lead, 1)] + [(Unit(d + k, k), -1) for k in range(b)]
    d = b - a
    return [(YPow(d), 1)] + [(Unit(k, k + d), -1) for k in range(a)]


def to_split(a: SnElement) -> SplitElement:
    out: dict[SplitKey, Fraction] = {}
    for (alpha, beta), c in a.items():
        parts = [_split_component(ai, bi) for ai, bi in zip(alpha, beta)]
        for combo in itertools.product(*parts):
            key = tuple(f for f, _ in combo)
            sign = 1
            for _, s in combo:
                sign *= s
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return SplitElement(a.n, out)


def _factor_to_nf(f: SplitFactor) -> list[tuple[tuple[int, int], int]]:
    if f.kind == "1":
        return [((0, 0), 1)]
    if f.kind == "x":
        return [((f.a, 0), 1)]
    if f.kind == "y":
        return [((0, f.a), 1)]
    return [((f.a, f.b), 1), ((f.a + 1, f.b + 1), -1)]


def from_split(s: SplitElement) -> SnElement:
    out: dict[Monomial, Fraction] = {}
    for key, c in s.items():
        if len(key) != s.n:
            raise DimensionMismatch("split key length differs from n")
        parts = [_factor_to_nf(f) for f in key]
        for combo in itertools.product(*parts):
            alpha = tuple(p[0][0] for p in combo)
            beta = tuple(p[0][1] for p in combo)
            sign = 1
            for _, sg in combo:
                sign *= sg
            m = (alpha, beta)
            v = out.get(m, 0) + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SnElement._raw(s.n, out)


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealSpec:
    """Describes one of the ideals p_i, p_I, a_{n,s} or p * p_n.

    kind: "height_one" (indices = (i,)), "pI" (indices = I), "ans" (level = s),
    "ppn" (indices = support, distinguished = n).
    """

    kind: str
    indices: tuple[int, ...] = ()
    level: int = 0
    distinguished: int = 0

    @classmethod
    def height_one(cls, i: int) -> "IdealSpec":
        return cls("height_one", (i,))

    @classmethod
    def p_I(cls, I: Iterable[int]) -> "IdealSpec":
        return cls("pI", tuple(sorted(set(I))))

    @classmethod
    def a_ns(cls, s: int) -> "IdealSpec":
        return cls("ans", level=s)

    @classmethod
    def p_pn(cls, support: Iterable[int], n: int) -> "IdealSpec":
        support = tuple(sorted(set(support)))
        if not support:
            raise ValueError("support must be nonempty")
        return cls("ppn", support, distinguished=n)

    def validate(self, n: int) -> None:
        if self.kind in ("height_one", "pI"):
            _check_index_set(self.indices, n)
        elif self.kind == "ans":
            if not 1 <= self.level <= n:
                raise IndexRangeError(f"level {self.level} outside 1..{n}")
        elif self.kind == "ppn":
            _check_index_set(self.indices + (self.distinguished,), n)
        else:
            raise ValueError(f"unknown ideal kind {self.kind!r}")

    def contains_key(self, key: SplitKey) -> bool:
        units = {i + 1 for i, f in enumerate(key) if f.kind == "E"}
        if self.kind in ("height_one", "pI"):
            return set(self.indices) <= units
        if self.kind == "ans":
            return len(units) >= self.level
        return self.distinguished in units and bool(units & set(self.indices))


def unit_components(key: SplitKey) -> frozenset[int]:
    return frozenset(i + 1 for i, f in enumerate(key) if f.kind == "E")


def in_ideal(a: SnElement, spec: IdealSpec) -> bool:
    spec.validate(a.n)
    return all(spec.contains_key(key) for key in to_split(a).terms)


def ideal_level(a: SnElement) -> int:
    """Largest s <= n with a in a_{n,s}; 0 when a is not in a_n.

    The zero element lies in every ideal and reports n.
    """
    keys = list(to_split(a).terms)
    if not keys:
        return a.n
    return min(len(unit_components(k)) for k in keys)


# ---------------------------------------------------------------------------
# The faithful module P_n
# ---------------------------------------------------------------------------


class PnPolynomial:
    """A commutative polynomial in x_1..x_n with exact coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], ScalarLike] | None = None):
        self.n = n
        self.terms = {tuple(k): scalar(v) for k, v in (terms or {}).items() if scalar(v)}
        for k in self.terms:
            if len(k) != n or any(e < 0 for e in k):
                raise ValueError(f"bad exponent vector {k}")

    @classmethod
    def monomial(cls, gamma: Iterable[int], c: ScalarLike = 1) -> "PnPolynomial":
        gamma = tuple(gamma)
        return cls(len(gamma), {gamma: c})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PnPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return f"PnPolynomial({self.n}, {self.terms})"


def act_on_polynomial(a: SnElement, p: PnPolynomial) -> PnPolynomial:
    """The action on P_n: x_i shifts up, y_i shifts down or kills."""
    if a.n != p.n:
        raise DimensionMismatch(f"S_{a.n} acting on P_{p.n}")
    out: dict[tuple[int, ...], Fraction] = {}
    for gamma, cp in p.terms.items():
        for (alpha, beta), ca in a.items():
            if any(g < b for g, b in zip(gamma, beta)):
                continue
            key = tuple(g - b + al for g, b, al in zip(gamma, beta, alpha))
            out[key] = out.get(key, 0) + ca * cp
    return PnPolynomial(a.n, out)


def monomials_up_to(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors in N^n of total degree <= d."""
    for total in range(d + 1):
        for bars in itertools.combinations(range(total + n - 1), n - 1):
            prev = -1
            gamma = []
            for b in bars:
                gamma.append(b - prev - 1)
                prev = b
            gamma.append(total + n - 1 - prev - 1)
            yield tuple(gamma)


def oracle_compare(a: SnElement, b: SnElement, d: int) -> bool:
    """Check nf_mul(a, b) against composition of actions on P_n up to degree d."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    ab = nf_mul(a, b)
    for gamma in monomials_up_to(a.n, d):
        m = PnPolynomial.monomial(gamma)
        if act_on_polynomial(ab, m) != act_on_polynomial(a, act_on_polynomial(b, m)):
            return False
    return True
