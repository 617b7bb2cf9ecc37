"""Text syntax for elements of S_n.

Grammar (whitespace is ignored)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" uint)?
    atom   := rational | ("x" | "y") uint | "E(" uint ";" uint "," uint ")"
            | "e(" uint ("," uint)* ")" | "(" expr ")"
    rational := uint ("/" uint)?

``E(k;p,q)`` is the matrix unit E_pq of component k and ``e(i,j,...)`` the
idempotent e_{i,j,...}.  The printer emits normal forms that parse back to the
same element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core_algebra import SnElement, SplitElement, idempotent, matrix_unit

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyEe])|(\^|\*|\+|-|/|\(|\)|;|,))")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        else:
            toks.append(_Tok("op", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, what: str):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {what}, found {found}", tok.offset)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            self.fail(repr(op))

    def uint(self) -> int:
        if self.tok.kind != "int":
            self.fail("an unsigned integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def index(self) -> int:
        tok = self.tok
        k = self.uint()
        if not 1 <= k <= self.n:
            raise ParseError(f"component index {k} outside 1..{self.n}", tok.offset)
        return k

    def parse(self) -> SnElement:
        value = self.expr()
        if self.tok.kind != "end":
            self.fail("an operator or end of input")
        return value

    def expr(self) -> SnElement:
        negate = self.accept("-")
        value = self.term()
        if negate:
            value = -value
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> SnElement:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> SnElement:
        base = self.atom()
        if self.accept("^"):
            base = base ** self.uint()
        return base

    def atom(self) -> SnElement:
        tok = self.tok
        if tok.kind == "int":
            num = self.uint()
            if self.accept("/"):
                den_tok = self.tok
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", den_tok.offset)
                return SnElement.const(self.n, Fraction(num, den))
            return SnElement.const(self.n, num)
        if tok.kind == "name":
            self.i += 1
            if tok.text in "xy":
                k = self.index()
                return SnElement.x(self.n, k) if tok.text == "x" else SnElement.y(self.n, k)
            if tok.text == "E":
                self.expect("(")
                k = self.index()
                self.expect(";")
                p = self.uint()
                self.expect(",")
                q = self.uint()
                self.expect(")")
                return matrix_unit(self.n, [k], [p], [q])
            self.expect("(")
            idx = [self.index()]
            while self.accept(","):
                idx.append(self.index())
            self.expect(")")
            return idempotent(self.n, idx)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        self.fail("a number, generator or '('")


def parse_element(text: str, n: int | None = None) -> SnElement:
    """Parse and evaluate ``text`` in S_n.

    When ``n`` is omitted it is taken as the largest component index that
    appears (at least 1).
    """
    if n is None:
        n = infer_n(text)
    return _Parser(text, n).parse()


def infer_n(text: str) -> int:
    top = 1
    for m in re.finditer(r"[xy]\s*(\d+)|E\s*\(\s*(\d+)|e\s*\(([\d\s,]+)\)", text):
        nums = [g for g in m.groups() if g]
        for chunk in nums:
            for v in chunk.split(","):
                if v.strip():
                    top = max(top, int(v))
    return top


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join(parts: list[tuple[Fraction, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for k, (c, body) in enumerate(parts):
        mag = abs(c)
        if body:
            text = body if mag == 1 else f"{format_scalar(mag)}*{body}"
        else:
            text = format_scalar(mag)
        if k == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def _power(name: str, k: int) -> str:
    return name if k == 1 else f"{name}^{k}"


def format_element(a: SnElement) -> str:
    """Canonical text of ``a``: terms in lexicographic (alpha, beta) order."""
    parts = []
    for (alpha, beta), c in a.sorted_terms():
        gens = [_power(f"x{i + 1}", k) for i, k in enumerate(alpha) if k]
        gens += [_power(f"y{i + 1}", k) for i, k in enumerate(beta) if k]
        parts.append((c, "*".join(gens)))
    return _join(parts)


def format_split(s: SplitElement) -> str:
    parts = []
    for key, c in sorted(s.items()):
        gens = []
        for i, f in enumerate(key, start=1):
            if f.kind == "x":
                gens.append(_power(f"x{i}", f.a))
            elif f.kind == "y":
                gens.append(_power(f"y{i}", f.a))
            elif f.kind == "E":
                gens.append(f"E({i};{f.a},{f.b})")
        parts.append((c, "*".join(gens)))
    return _join(parts)
