"""Polynomial expression grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

Names match ``[A-Za-z][A-Za-z0-9_]*``.  Whitespace is ignored.  Juxtaposition
is not multiplication: ``2x`` is a syntax error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            p = p ** int(val)
        return p

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("denominator must be an integer literal", p2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                return Polynomial.constant(self.vars, Fraction(num, int(v2)))
            return Polynomial.constant(self.vars, num)
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_expression(text: str, vars: Sequence[str]) -> Polynomial:
    """Parse ``text`` into a polynomial over the variable list ``vars``."""
    return _Parser(text, vars).parse()


def parse_list(text: str, vars: Sequence[str], sep: str = ",") -> list[Polynomial]:
    """Parse a separator-delimited list of expressions (empty text gives [])."""
    if not text.strip():
        return []
    return [parse_expression(part, vars) for part in text.split(sep)]


def parse_matrix(text: str, vars: Sequence[str]) -> list[list[Polynomial]]:
    """Rows separated by ``;``, entries by ``,``."""
    return [parse_list(row, vars) for row in text.split(";")]
