"""Recursive-descent parser for polynomial and rational-function input.

Grammar (implicit multiplication is rejected)::

    function := expr [ '/' '(' expr ')' ]
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | var ['^' ['-'] integer] | '(' expr ')' ['^' integer]
    rational := integer ['/' positive-integer]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import RationalFunction, SparseLaurentPoly


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3))
            toks.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        if not names:
            raise ValueError("at least one variable name is required")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.names = list(names)
        self.n = len(names)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, repr(op))

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, "integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def function(self) -> tuple[SparseLaurentPoly, SparseLaurentPoly | None]:
        num = self.expr()
        den = None
        if self.accept("/"):
            self.expect("(")
            den = self.expr()
            self.expect(")")
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, "operator or end of input")
        return num, den

    def expr(self) -> SparseLaurentPoly:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> SparseLaurentPoly:
        acc = self.factor()
        while self.accept("*"):
            acc = acc * self.factor()
        if self.tok.kind in ("int", "name") or (self.tok.kind == "op" and self.tok.text == "("):
            raise ParseError("implicit multiplication is not allowed", self.tok.pos, "'*'")
        return acc

    def factor(self) -> SparseLaurentPoly:
        tok = self.tok
        if tok.kind == "int":
            num = self.integer()
            # 'a/b' is a rational only when an integer follows; '2/(..)' is a quotient
            if self.tok.kind == "op" and self.tok.text == "/" and self.peek().kind == "int":
                self.i += 1
                pos = self.tok.pos
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator in rational constant", pos, "positive integer")
                return SparseLaurentPoly.constant(self.n, Fraction(num, den))
            return SparseLaurentPoly.constant(self.n, num)
        if tok.kind == "name":
            if tok.text not in self.names:
                raise ParseError(f"unknown variable {tok.text!r}", tok.pos, "one of " + ", ".join(self.names))
            self.i += 1
            k = self.names.index(tok.text)
            power = 1
            if self.accept("^"):
                sign = -1 if self.accept("-") else 1
                power = sign * self.integer()
            e = [0] * self.n
            e[k] = power
            return SparseLaurentPoly.monomial(e)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            if self.accept("^"):
                inner = inner ** self.integer()
            return inner
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, "number, variable or '('")


def parse_polynomial(text: str, names: Sequence[str]) -> SparseLaurentPoly:
    p = _Parser(text, names)
    g = p.expr()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos, "operator or end of input")
    return g


def normalize_pair(P: SparseLaurentPoly, Q: SparseLaurentPoly) -> tuple[SparseLaurentPoly, SparseLaurentPoly]:
    """Scale P and Q jointly so that Q is primitive with positive leading coefficient."""
    c = Q.content()
    if Q.leading_coefficient() < 0:
        c = -c
    return P.scale(1 / c), Q.scale(1 / c)


def parse_rational_function(text: str | None, names: Sequence[str], *, num: str | None = None,
                            den: str | None = None) -> RationalFunction:
    """Parse ``P/(Q)`` text, or separate numerator/denominator strings.

    ``num``/``den`` take precedence over ``text``. A missing denominator means Q = 1.
    """
    if num is not None:
        P = parse_polynomial(num, names)
        Q = parse_polynomial(den, names) if den is not None else SparseLaurentPoly.constant(len(names), 1)
    else:
        if text is None:
            raise ValueError("either text or num must be given")
        P, Q = _Parser(text, names).function()
        if Q is None:
            Q = SparseLaurentPoly.constant(len(names), 1)
    if Q.is_zero():
        raise ParseError("denominator is the zero polynomial", 0)
    for g in (P, Q):
        if not g.is_polynomial():
            raise ParseError("negative exponents are not allowed in P or Q", 0)
    P, Q = normalize_pair(P, Q)
    return RationalFunction(P, Q, tuple(names))
