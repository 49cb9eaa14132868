"""Text grammar for polynomials and ideals.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nonneg-int)?
    base   := rational | variable | '(' expr ')'

A rational literal is an integer or ``p/q`` with integer p, q.  ``**`` is
accepted as a synonym for ``^``.  Ideals are comma-separated expressions.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence

from .poly import Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^(),/]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def scan_variables(text: str) -> List[str]:
    """Variable names in order of first occurrence."""
    seen: List[str] = []
    for kind, value, _ in _tokenize(text):
        if kind == "name" and value not in seen:
            seen.append(value)
    return seen


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = list(names)
        self.index = {n: j for j, n in enumerate(self.names)}
        self.m = len(self.names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind == "op" and v == "-":
                raise ParseError("negative exponent", pos, self.text)
            if kind != "num":
                raise ParseError("expected a nonnegative integer exponent", pos, self.text)
            base = base ** int(v)
        return base

    def base(self) -> Polynomial:
        kind, v, pos = self.take()
        if kind == "num":
            value = Fraction(int(v))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ParseError("expected an integer denominator", p2, self.text)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2, self.text)
                value = value / int(v2)
            return Polynomial.constant(value, self.m)
        if kind == "name":
            if v not in self.index:
                raise ParseError(f"unknown variable {v!r}", pos, self.text)
            return Polynomial.variable(self.index[v], self.m)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos, self.text)


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse ``text`` into an expanded polynomial in the variables ``names``."""
    if not names:
        raise ValueError("at least one variable name is required")
    p = _Parser(text, names)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0, text)
    out = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r}", pos, text)
    return out


def split_ideal(text: str) -> List[str]:
    """Split ideal text at top-level commas."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_ideal(text: str, names: Sequence[str]) -> List[Polynomial]:
    out = []
    for chunk, offset in split_ideal(text):
        try:
            out.append(parse_polynomial(chunk, names))
        except ParseError as err:
            raise ParseError(str(err).rsplit(" at position", 1)[0], err.pos + offset, text) from None
    return out
