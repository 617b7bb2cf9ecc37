"""GL_infinity(S_{n-1}) as corner matrices and as the congruence units 1 + p_n.

A unit ``1 + sum a_pq E_pq(n)`` of S_n (entries a_pq over components
1..n-1) is the same thing as the infinite matrix ``1 + sum a_pq E_pq`` over
S_{n-1}.  This module converts between the two pictures, builds the named
generators (mu, X, Y, theta), evaluates words in them, and produces explicit
elementary-matrix factorizations of the mu and theta matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .core_algebra import (
    DimensionMismatch,
    IndexRangeError,
    Monomial,
    ScalarLike,
    SnElement,
    _split_component,
    idempotent,
    scalar,
)


class NotInCongruenceForm(ValueError):
    """The element is not of the form 1 + (something in p_n)."""


class InverseCheckFailed(ArithmeticError):
    pass


EntryLike = Union[SnElement, ScalarLike]


def _index_set(I: Iterable[int], n: int) -> tuple[int, ...]:
    I = tuple(sorted(set(I)))
    for i in I:
        if not 1 <= i <= n:
            raise IndexRangeError(f"index {i} outside 1..{n}")
    return I


# ---------------------------------------------------------------------------
# Corner matrices
# ---------------------------------------------------------------------------


class CornerMatrix:
    """N x N matrix over S_{n-1}, equal to the identity outside a finite corner.

    ``n`` is the ambient count: the matrix represents a unit of S_n and its
    entries are elements of S_{n-1}.  Only entries that differ from the
    identity pattern are stored.
    """

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Mapping[tuple[int, int], EntryLike] | None = None):
        if n < 1:
            raise ValueError("ambient count must be >= 1")
        self.n = n
        dim = n - 1
        clean: dict[tuple[int, int], SnElement] = {}
        for (r, c), v in (entries or {}).items():
            if r < 0 or c < 0:
                raise IndexRangeError("matrix indices must be non-negative")
            if not isinstance(v, SnElement):
                v = SnElement.const(dim, v)
            elif v.n != dim:
                raise DimensionMismatch(f"entry over S_{v.n}, expected S_{dim}")
            if r == c:
                if v != SnElement.one(dim):
                    clean[(r, c)] = v
            elif v:
                clean[(r, c)] = v
        self.entries = clean

    @property
    def dim(self) -> int:
        return self.n - 1

    @classmethod
    def identity(cls, n: int) -> "CornerMatrix":
        return cls(n)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, a: EntryLike) -> "CornerMatrix":
        if i == j:
            raise ValueError("elementary matrices need i != j")
        return cls(n, {(i, j): a})

    @classmethod
    def diag(cls, n: int, values: Sequence[EntryLike], start: int = 0) -> "CornerMatrix":
        return cls(n, {(start + k, start + k): v for k, v in enumerate(values)})

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[EntryLike]], at: Sequence[int] | None = None) -> "CornerMatrix":
        """Place a small block; ``at`` lists the row/column indices it occupies."""
        at = list(range(len(rows))) if at is None else list(at)
        entries = {}
        for r, row in zip(at, rows):
            for c, v in zip(at, row):
                entries[(r, c)] = v
        return cls(n, entries)

    def __getitem__(self, rc: tuple[int, int]) -> SnElement:
        if rc in self.entries:
            return self.entries[rc]
        return SnElement.const(self.dim, 1 if rc[0] == rc[1] else 0)

    def extent(self) -> int:
        if not self.entries:
            return 0
        return 1 + max(max(r, c) for r, c in self.entries)

    def deviation(self) -> dict[tuple[int, int], SnElement]:
        """Entries of (self - identity)."""
        one = SnElement.one(self.dim)
        return {(r, c): (v - one if r == c else v) for (r, c), v in self.entries.items()}

    def is_identity(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CornerMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        from .parser import format_element

        body = ", ".join(f"({r},{c}): {format_element(v)!r}" for (r, c), v in sorted(self.entries.items()))
        return f"CornerMatrix(n={self.n}, {{{body}}})"

    def __mul__(self, other: "CornerMatrix") -> "CornerMatrix":
        return mat_mul(self, other)

    def map_entries(self, f) -> "CornerMatrix":
        return CornerMatrix(self.n, {rc: f(v) for rc, v in self.entries.items()})


def mat_mul(a: CornerMatrix, b: CornerMatrix) -> CornerMatrix:
    """Exact product; computed as 1 + A + B + A*B on the deviations A, B."""
    if a.n != b.n:
        raise DimensionMismatch(f"ambient {a.n} vs {b.n}")
    da, db = a.deviation(), b.deviation()
    out: dict[tuple[int, int], SnElement] = {}

    def add(rc, v):
        if rc in out:
            out[rc] = out[rc] + v
        else:
            out[rc] = v

    for rc, v in da.items():
        add(rc, v)
    for rc, v in db.items():
        add(rc, v)
    by_row: dict[int, list[tuple[int, SnElement]]] = {}
    for (t, c), v in db.items():
        by_row.setdefault(t, []).append((c, v))
    for (r, t), va in da.items():
        for c, vb in by_row.get(t, ()):
            add((r, c), va * vb)
    one = SnElement.one(a.dim)
    return CornerMatrix(a.n, {(r, c): (v + one if r == c else v) for (r, c), v in out.items()})


# ---------------------------------------------------------------------------
# Element <-> matrix
# ---------------------------------------------------------------------------


def as_matrix(u: SnElement) -> CornerMatrix:
    """The matrix of a unit u with u - 1 in p_n (n = u.n)."""
    n = u.n
    if n < 1:
        raise NotInCongruenceForm("S_0 has no congruence units")
    dim = n - 1
    leftovers: dict[tuple, Fraction] = {}
    dev: dict[tuple[int, int], dict[Monomial, Fraction]] = {}
    for (alpha, beta), c in (u - 1).items():
        rest = (alpha[:dim], beta[:dim])
        for factor, sign in _split_component(alpha[dim], beta[dim]):
            if factor.kind == "E":
                bucket = dev.setdefault((factor.a, factor.b), {})
                bucket[rest] = bucket.get(rest, 0) + sign * c
            else:
                key = (factor, rest)
                leftovers[key] = leftovers.get(key, 0) + sign * c
    if any(leftovers.values()):
        raise NotInCongruenceForm("u - 1 is not in p_n")
    entries = {}
    one = SnElement.one(dim)
    for (p, q), terms in dev.items():
        v = SnElement(dim, terms)
        entries[(p, q)] = v + one if p == q else v
    return CornerMatrix(n, entries)


def as_element(m: CornerMatrix) -> SnElement:
    """Inverse of :func:`as_matrix`: 1 + sum (m_pq - delta_pq) E_pq(n)."""
    n, dim = m.n, m.dim
    z = (0,) * n
    out: dict[Monomial, Fraction] = {(z, z): Fraction(1)}
    for (p, q), v in m.deviation().items():
        for (alpha, beta), c in v.items():
            for key, sgn in (
                ((alpha + (p,), beta + (q,)), 1),
                ((alpha + (p + 1,), beta + (q + 1,)), -1),
            ):
                out[key] = out.get(key, 0) + sgn * c
    return SnElement(n, out)


# ---------------------------------------------------------------------------
# Named generators (elements of S_n)
# ---------------------------------------------------------------------------


def gen_mu(n: int, I: Iterable[int], lam: ScalarLike) -> SnElement:
    """mu_I(lam) = lam e_I + 1 - e_I."""
    lam = scalar(lam)
    if not lam:
        raise ValueError("mu_I(lambda) needs lambda != 0")
    I = _index_set(I, n)
    if not I:
        raise IndexRangeError("mu_I needs a nonempty index set")
    return 1 + idempotent(n, I).scale(lam - 1)


def gen_mu_unit(n: int, I: Iterable[int], u: SnElement) -> SnElement:
    """mu_I(u) = u e_I + 1 - e_I for an element u of S_{CI}."""
    e = idempotent(n, I)
    return u * e + 1 - e


def gen_XY(n: int, i: int, I: Iterable[int], which: str) -> SnElement:
    """X(i, I) = x_i e_I + 1 - e_I  or  Y(i, I) = y_i e_I + 1 - e_I (i not in I)."""
    I = _index_set(I, n)
    if i in I or not 1 <= i <= n:
        raise IndexRangeError(f"need i in the complement of {I}")
    if not I:
        raise IndexRangeError("X/Y need a nonempty index set")
    if which == "X":
        g = SnElement.x(n, i)
    elif which == "Y":
        g = SnElement.y(n, i)
    else:
        raise ValueError("which must be 'X' or 'Y'")
    return gen_mu_unit(n, I, g)


def gen_X(n: int, i: int, I: Iterable[int]) -> SnElement:
    return gen_XY(n, i, I, "X")


def gen_Y(n: int, i: int, I: Iterable[int]) -> SnElement:
    return gen_XY(n, i, I, "Y")


def gen_theta(n: int, i: int, j: int, J: Iterable[int]) -> SnElement:
    """theta_ij(J) = Y(i, J - i) X(j, J - j)."""
    J = _index_set(J, n)
    if len(J) < 2 or i == j or i not in J or j not in J:
        raise IndexRangeError(f"theta needs distinct i, j in J with |J| >= 2, got {i}, {j}, {J}")
    rest_i = [k for k in J if k != i]
    rest_j = [k for k in J if k != j]
    return gen_Y(n, i, rest_i) * gen_X(n, j, rest_j)


# ---------------------------------------------------------------------------
# Tokens and words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Elem:
    """Elementary matrix 1 + a E_ij (i != j), a in S_{n-1}."""

    i: int
    j: int
    a: SnElement
    exponent: int = 1

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("elementary token needs i != j")

    def inverse(self) -> "Elem":
        return Elem(self.i, self.j, self.a, -self.exponent)

    def base_matrix(self, n: int) -> CornerMatrix:
        return CornerMatrix.elementary(n, self.i, self.j, self.a)

    def matrix(self, n: int) -> CornerMatrix:
        # (1 + aE_ij)^k = 1 + k a E_ij for i != j
        return CornerMatrix.elementary(n, self.i, self.j, self.a.scale(self.exponent))


@dataclass(frozen=True)
class Mu:
    """mu_I(lam) with n in I."""

    I: tuple[int, ...]
    lam: Fraction
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(sorted(set(self.I))))
        object.__setattr__(self, "lam", scalar(self.lam))
        if not self.lam:
            raise ValueError("mu token needs lambda != 0")

    def inverse(self) -> "Mu":
        return Mu(self.I, self.lam, -self.exponent)

    def element(self, n: int) -> SnElement:
        if n not in self.I:
            raise IndexRangeError(f"mu token must contain the distinguished index {n}")
        return gen_mu(n, self.I, self.lam ** self.exponent)

    def matrix(self, n: int) -> CornerMatrix:
        return as_matrix(self.element(n))


@dataclass(frozen=True)
class Theta:
    """theta_ij(J) with n in J and i, j in J - n."""

    i: int
    j: int
    J: tuple[int, ...]
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(sorted(set(self.J))))
        if self.i == self.j or self.i not in self.J or self.j not in self.J:
            raise ValueError("theta token needs distinct i, j in J")

    def inverse(self) -> "Theta":
        return Theta(self.i, self.j, self.J, -self.exponent)

    def element(self, n: int) -> SnElement:
        if n not in self.J or n in (self.i, self.j):
            raise IndexRangeError(f"theta token needs {n} in J and i, j != {n}")
        i, j = (self.i, self.j) if self.exponent >= 0 else (self.j, self.i)
        return gen_theta(n, i, j, self.J) ** abs(self.exponent)

    def matrix(self, n: int) -> CornerMatrix:
        return as_matrix(self.element(n))


GeneratorToken = Union[Elem, Mu, Theta]


@dataclass(frozen=True)
class GroupWord:
    n: int
    tokens: tuple[GeneratorToken, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        if self.n != other.n:
            raise DimensionMismatch("words over different ambient counts")
        return GroupWord(self.n, self.tokens + other.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def is_elementary(self) -> bool:
        return all(isinstance(t, Elem) for t in self.tokens)


def token_matrix(tok: GeneratorToken, n: int) -> CornerMatrix:
    return tok.matrix(n)


def word_eval(w: GroupWord) -> CornerMatrix:
    result = CornerMatrix.identity(w.n)
    for tok in w.tokens:
        result = mat_mul(result, tok.matrix(w.n))
    return result


def word_element(w: GroupWord) -> SnElement:
    """The word evaluated as a unit of S_n."""
    result = SnElement.one(w.n)
    for tok in w.tokens:
        if isinstance(tok, Elem):
            result = result * as_element(tok.matrix(w.n))
        else:
            result = result * tok.element(w.n)
    return result


def word_inverse(w: GroupWord) -> GroupWord:
    return GroupWord(w.n, tuple(t.inverse() for t in reversed(w.tokens)))


def verify_inverse(u, v) -> bool:
    """True iff uv = vu = 1 (SnElements or CornerMatrices)."""
    if isinstance(u, CornerMatrix):
        return mat_mul(u, v).is_identity() and mat_mul(v, u).is_identity()
    one = SnElement.one(u.n)
    return u * v == one and v * u == one


def embed_idempotent(w: GroupWord, e: SnElement) -> GroupWord:
    """Apply u -> e u + 1 - e tokenwise: 1 + aE_ij becomes 1 + e a E_ij.

    Valid when e is an idempotent commuting with every entry of the word.
    """
    out = []
    for tok in w.tokens:
        if not isinstance(tok, Elem):
            raise TypeError("only elementary words can be embedded")
        out.append(Elem(tok.i, tok.j, e * tok.a, tok.exponent))
    return GroupWord(w.n, tuple(out))


def relabel(w: GroupWord, perm: Mapping[int, int]) -> GroupWord:
    """Permute tensor components inside every elementary entry."""
    out = []
    for tok in w.tokens:
        if not isinstance(tok, Elem):
            raise TypeError("only elementary words can be relabelled")
        out.append(Elem(tok.i, tok.j, tok.a.permute(perm), tok.exponent))
    return GroupWord(w.n, tuple(out))


def move_rows(w: GroupWord, rows: Sequence[int]) -> GroupWord:
    """Re-embed a word written on rows 0, 1, ... onto the given rows."""
    out = []
    for tok in w.tokens:
        out.append(Elem(rows[tok.i], rows[tok.j], tok.a, tok.exponent))
    return GroupWord(w.n, tuple(out))


# ---------------------------------------------------------------------------
# Elementary factorizations
# ---------------------------------------------------------------------------


def whitehead_diag(n: int, u: SnElement, u_inv: SnElement, i: int = 0, j: int = 1) -> GroupWord:
    """Six elementary tokens whose product is diag(u, u_inv) on rows i, j.

    e_ij(u) e_ji(-u_inv) e_ij(u) e_ij(-1) e_ji(1) e_ij(-1).
    """
    if i == j:
        raise ValueError("rows must differ")
    if not verify_inverse(u, u_inv):
        raise InverseCheckFailed("u_inv is not a two-sided inverse of u")
    dim = n - 1
    one = SnElement.one(dim)
    return GroupWord(
        n,
        (
            Elem(i, j, u),
            Elem(j, i, -u_inv),
            Elem(i, j, u),
            Elem(i, j, -one),
            Elem(j, i, one),
            Elem(i, j, -one),
        ),
    )


def scaling_word(n: int, m: int, t: ScalarLike, e: SnElement | None = None, rows: Sequence[int] = (0, 1)) -> GroupWord:
    """Elementary word for diag(1 + (t - 1) e E_00(m), 1) over S_{n-1}.

    Built from the four-shear identity in the x_m, y_m variables with
    lam = 1/t - 1, corrected by a Whitehead word, then pushed through
    u -> e u + 1 - e.  ``e`` is an idempotent over components other than m
    (default 1); t may be any nonzero scalar.
    """
    dim = n - 1
    t = scalar(t)
    if not t:
        raise ValueError("scaling factor must be nonzero")
    if not 1 <= m <= dim:
        raise IndexRangeError(f"component {m} outside 1..{dim}")
    if t == 1:
        return GroupWord(n, ())
    lam = 1 / t - 1
    x, y = SnElement.x(dim, m), SnElement.y(dim, m)
    wh = whitehead_diag(n, SnElement.const(dim, t), SnElement.const(dim, 1 / t), 0, 1)
    shears = GroupWord(
        n,
        (
            Elem(1, 0, y.scale(-1 / (1 + lam))),
            Elem(0, 1, x.scale(lam)),
            Elem(1, 0, y),
            Elem(0, 1, x.scale(-lam / (1 + lam))),
        ),
    )
    word = wh + shears
    if e is not None:
        word = embed_idempotent(word, e)
    return move_rows(word, rows)


def factor_mu_elementary(n: int, I: Iterable[int], lam: ScalarLike, rows: Sequence[int] = (0, 1)) -> GroupWord:
    """Elementary word evaluating to the matrix of mu_I(lam), n in I, |I| >= 2."""
    I = _index_set(I, n)
    if n not in I or len(I) < 2:
        raise IndexRangeError(f"need n={n} in I and |I| >= 2, got {I}")
    lam = scalar(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    dim = n - 1
    inner = [k for k in I if k != n]
    m = max(inner)
    rest = [k for k in inner if k != m]
    e = idempotent(dim, rest) if rest else None
    return scaling_word(n, m, lam, e, rows)


def _reflection_to_corner_word(n: int, comp: int) -> GroupWord:
    """Elementary word for (x e; 0 y) in the variables of component ``comp``.

    From the six-factor identity A B C (y 0; e x) D F = diag(1 - 2e, 1):
    (x e; 0 y) = (y 0; e x)^-1 = D F diag(1 - 2e, 1) A B C.
    """
    dim = n - 1
    one = SnElement.one(dim)
    x, y = SnElement.x(dim, comp), SnElement.y(dim, comp)
    head = GroupWord(n, (Elem(0, 1, x), Elem(1, 0, -y)))
    tail = GroupWord(n, (Elem(1, 0, one), Elem(0, 1, -one), Elem(1, 0, one - x)))
    return head + scaling_word(n, comp, -1) + tail


def _theta12_word(n: int, m: int) -> GroupWord:
    """Elementary word for diag(theta_12({1..m}), 1) over S_{n-1}, m >= 2."""
    dim = n - 1
    if m > dim:
        raise IndexRangeError(f"J = 1..{m} does not fit in S_{dim}")
    x1, y1 = SnElement.x(dim, 1), SnElement.y(dim, 1)
    x2, y2 = SnElement.x(dim, 2), SnElement.y(dim, 2)
    one = SnElement.one(dim)
    word = _reflection_to_corner_word(n, 2)
    if m == 2:
        return word + GroupWord(
            n,
            (
                Elem(1, 0, -(x2 * y1)),
                Elem(0, 1, (y2 - 1) * x1),
                Elem(1, 0, y1),
                Elem(0, 1, -((y2 - 1) * x1)),
                Elem(0, 1, (y2 - 1) * (1 - x2) * x1),
            ),
        )
    eI = idempotent(dim, range(3, m + 1))
    e2 = idempotent(dim, [2])
    comp = one - eI
    column_clear = GroupWord(
        n,
        (
            Elem(1, 0, -(x2 * y1 * eI)),
            Elem(0, 1, (y2 - 1) * x1),
            Elem(1, 0, y1 * eI),
            Elem(0, 1, -((y2 - 1) * x1)),
            Elem(0, 1, (y2 - 1) * (1 - x2) * x1 * eI),
        ),
    )
    # N = (1 + (x2-1)(1-eI), e2(1-eI); 0, eI + (1-eI)y2) and
    # T1 N T3 T4 T5 = diag(1 - 2 e2 (1-eI), 1), so N^-1 = T3 T4 T5 R T1.
    t_mid = GroupWord(
        n,
        (
            Elem(1, 0, x2),
            Elem(0, 1, (1 - y2) * comp),
            Elem(1, 0, -1 - (x2 - 1) * eI),
        ),
    )
    reflection = scaling_word(n, 2, -1) + scaling_word(n, 2, -1, eI)
    t_first = GroupWord(n, (Elem(0, 1, -((x2 - 1 + e2.scale(2)) * comp)),))
    return word + column_clear + t_mid + reflection + t_first


def theta_relabelling(dim: int, i: int, j: int, J: Sequence[int]) -> dict[int, int]:
    """Permutation of 1..dim sending 1 -> i, 2 -> j, 3..|J| -> J - {i, j}."""
    J = sorted(set(J))
    head = [i, j] + [k for k in J if k not in (i, j)]
    tail = [k for k in range(1, dim + 1) if k not in J]
    return {src: dst for src, dst in zip(range(1, dim + 1), head + tail)}


def factor_theta_elementary(n: int, i: int, j: int, J: Iterable[int], rows: Sequence[int] = (0, 1)) -> GroupWord:
    """Elementary word for diag(theta_ij(J), 1) over S_{n-1}, J inside 1..n-1."""
    dim = n - 1
    J = _index_set(J, dim)
    if len(J) < 2:
        raise IndexRangeError("theta needs |J| >= 2")
    if i == j or i not in J or j not in J:
        raise IndexRangeError(f"need distinct i, j in {J}")
    word = _theta12_word(n, len(J))
    perm = theta_relabelling(dim, i, j, J)
    if any(k != v for k, v in perm.items()):
        word = relabel(word, perm)
    return move_rows(word, rows)
