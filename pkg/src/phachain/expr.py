"""Recursive-descent parser for rational-function literals such as ``"x/3 + 1/x"``.

Grammar (implicit multiplication allowed, e.g. ``-2x`` or ``3(x+1)``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary | <implicit> power)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | VAR | "(" expr ")"

Numbers are exact: ``0.25`` is read as 1/4.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ratfun import Poly, RatFun

__all__ = ["parse_ratfun", "parse_rational", "ParseError"]


class ParseError(ValueError):
    pass


_TOKENS = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text: str, var: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r}")

    def parse(self) -> RatFun:
        value = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input at {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok in "*/":
                self.take()
                rhs = self.unary()
                if tok == "/":
                    if rhs.is_zero():
                        raise ParseError("division by zero in literal")
                    value = value / rhs
                else:
                    value = value * rhs
            elif kind in ("num", "name") or (kind, tok) == ("op", "("):
                value = value * self.power()
            else:
                return value

    def unary(self):
        kind, tok = self.peek()
        if kind == "op" and tok in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num" or tok.denominator != 1:
                raise ParseError("exponent must be an integer")
            k = sign * int(tok)
            if k < 0 and base.is_zero():
                raise ParseError("negative power of zero")
            return base**k
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return RatFun.const(tok)
        if kind == "name":
            if tok != self.var:
                raise ParseError(f"unknown symbol {tok!r} (variable is {self.var!r})")
            return RatFun(Poly((0, 1)))
        if (kind, tok) == ("op", "("):
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok!r}")


def parse_ratfun(text: str, var: str = "x") -> RatFun:
    """Parse an infix rational-function literal in one variable."""
    return _Parser(text, var).parse()


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational literal: ``"2/3"``, ``"-5"``, ``"0.25"``."""
    r = parse_ratfun(text)
    if not r.is_const():
        raise ParseError(f"{text!r} is not a constant")
    return r.const_value() if not r.is_zero() else Fraction(0)
