"""Lie expression trees, their text grammar and canonical printer.

Grammar (whitespace insignificant)::

    expr := term (('+'|'-') term)*
    term := (INT '*')? atom
    atom := 'x' INT | '[' expr ',' expr (',' expr)* ']' | 'P(' expr ')'

``P`` is the p-map.  The printer also emits ``0`` for the empty sum and the
parser accepts it back, so every expression round-trips.  Brackets with
more than two entries are read left-normed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..errors import ParseError

__all__ = ["Gen", "Bracket", "PPower", "Sum", "LieExpr", "parse_expr", "format_expr", "max_generator"]


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Bracket:
    left: "LieExpr"
    right: "LieExpr"


@dataclass(frozen=True)
class PPower:
    arg: "LieExpr"


@dataclass(frozen=True)
class Sum:
    """Linear combination; ``terms`` holds ``(coefficient, atom)`` pairs."""

    terms: tuple[tuple[int, "LieExpr"], ...]


LieExpr = Union[Gen, Bracket, PPower, Sum]


def _combine(terms: list[tuple[int, LieExpr]], p: int | None) -> LieExpr:
    merged: dict[LieExpr, int] = {}
    for c, atom in terms:
        if isinstance(atom, Sum):
            for c2, a2 in atom.terms:
                merged[a2] = merged.get(a2, 0) + c * c2
        else:
            merged[atom] = merged.get(atom, 0) + c
    out = []
    for atom, c in merged.items():
        if p is not None:
            c %= p
        if c:
            out.append((c, atom))
    if len(out) == 1 and out[0][0] == 1:
        return out[0][1]
    return Sum(tuple(out))


class _Parser:
    def __init__(self, text: str, p: int | None, d: int | None):
        self.src = text.encode("utf-8")
        self.pos = 0
        self.p = p
        self.d = d

    def fail(self, msg: str):
        raise ParseError(msg, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.src) and self.src[self.pos : self.pos + 1].isspace():
            self.pos += 1

    def peek(self) -> bytes:
        self.skip()
        return self.src[self.pos : self.pos + 1]

    def expect(self, tok: bytes) -> None:
        self.skip()
        if not self.src.startswith(tok, self.pos):
            self.fail(f"expected {tok.decode()!r}")
        self.pos += len(tok)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.src[start : self.pos])

    def expr(self) -> LieExpr:
        sign = 1
        if self.peek() == b"-":
            self.pos += 1
            sign = -1
        terms = [self.term(sign)]
        while self.peek() in (b"+", b"-"):
            sign = 1 if self.peek() == b"+" else -1
            self.pos += 1
            terms.append(self.term(sign))
        return _combine(terms, self.p)

    def term(self, sign: int) -> tuple[int, LieExpr]:
        if self.peek().isdigit():
            start = self.pos
            c = self.integer()
            if self.peek() == b"*":
                self.pos += 1
                return sign * c, self.atom()
            if c == 0:
                return 0, Sum(())
            self.pos = start
            self.fail("expected '*' after coefficient")
        return sign, self.atom()

    def atom(self) -> LieExpr:
        tok = self.peek()
        if tok == b"x":
            start = self.pos
            self.pos += 1
            idx = self.integer()
            if idx < 1 or (self.d is not None and idx > self.d):
                self.pos = start
                self.fail(f"generator index {idx} out of range 1..{self.d if self.d is not None else 'inf'}")
            return Gen(idx)
        if tok == b"[":
            self.pos += 1
            node = self.expr()
            self.expect(b",")
            node = Bracket(node, self.expr())
            # [a,b,c] is left-normed shorthand for [[a,b],c]
            while self.peek() == b",":
                self.pos += 1
                node = Bracket(node, self.expr())
            self.expect(b"]")
            return node
        if tok == b"P":
            self.pos += 1
            self.expect(b"(")
            arg = self.expr()
            self.expect(b")")
            return PPower(arg)
        if not tok:
            self.fail("unexpected end of input")
        self.fail(f"unexpected character {tok.decode(errors='replace')!r}")


def parse_expr(text: str, p: int | None = None, d: int | None = None) -> LieExpr:
    """Parse ``text``; coefficients are reduced mod ``p`` when it is given."""
    parser = _Parser(text, p, d)
    result = parser.expr()
    parser.skip()
    if parser.pos != len(parser.src):
        parser.fail("trailing input")
    return result


def format_expr(e: LieExpr) -> str:
    """Canonical text form, accepted back by :func:`parse_expr`."""
    if isinstance(e, Gen):
        return f"x{e.index}"
    if isinstance(e, Bracket):
        return f"[{format_expr(e.left)},{format_expr(e.right)}]"
    if isinstance(e, PPower):
        return f"P({format_expr(e.arg)})"
    if not e.terms:
        return "0"
    parts = []
    for i, (c, atom) in enumerate(e.terms):
        body = format_expr(atom)
        mag = abs(c)
        piece = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            parts.append(piece if c > 0 else f"-{piece}")
        else:
            parts.append(f" + {piece}" if c > 0 else f" - {piece}")
    return "".join(parts)


def max_generator(e: LieExpr) -> int:
    if isinstance(e, Gen):
        return e.index
    if isinstance(e, Bracket):
        return max(max_generator(e.left), max_generator(e.right))
    if isinstance(e, PPower):
        return max_generator(e.arg)
    return max((max_generator(a) for _, a in e.terms), default=0)

