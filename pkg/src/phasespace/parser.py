"""Observable expressions: a small recursive-descent parser and a printer.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := 'q' | 'p' | uint | '(' expr ')'

A rational literal such as ``1/4`` is an integer divided by an integer.
Division is allowed only by nonzero constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import ExpressionSyntaxError, NonPolynomial
from .ncalg import CRational
from .weyl import PolySymbol

__all__ = ["ObservableExpr", "parse_observable", "parse_symbol", "format_symbol", "parse_rational"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([qp])|([-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, *ops):
        kind, val, _ = self.peek()
        if kind == "op" and val in ops:
            self.i += 1
            return val
        return None

    def fail(self, what):
        kind, val, pos = self.peek()
        got = "end of input" if kind == "end" else repr(val)
        raise ExpressionSyntaxError(f"expected {what}, got {got}", pos)

    def parse(self) -> PolySymbol:
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail("operator or end of input")
        return out

    def expr(self) -> PolySymbol:
        sign = self.accept("+", "-")
        out = self.term()
        if sign == "-":
            out = -out
        while True:
            op = self.accept("+", "-")
            if op is None:
                return out
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs

    def term(self) -> PolySymbol:
        out = self.factor()
        while True:
            op = self.accept("*", "/")
            if op is None:
                return out
            pos = self.peek()[2]
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                if rhs.degree() > 0:
                    raise NonPolynomial(f"division by a non-constant at position {pos}")
                c = rhs.coeff(0, 0)
                if c.is_zero():
                    raise NonPolynomial(f"division by zero at position {pos}")
                out = out / c

    def factor(self) -> PolySymbol:
        base = self.base()
        if self.accept("^"):
            kind, val, _ = self.peek()
            if kind != "num":
                self.fail("unsigned integer exponent")
            self.take()
            return base ** int(val)
        return base

    def base(self) -> PolySymbol:
        kind, val, _ = self.peek()
        if kind == "var":
            self.take()
            return PolySymbol.monomial(1, 0) if val == "q" else PolySymbol.monomial(0, 1)
        if kind == "num":
            self.take()
            return PolySymbol.constant(int(val))
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.fail("')'")
            return inner
        self.fail("'q', 'p', a number or '('")


@dataclass(frozen=True)
class ObservableExpr:
    source: str
    symbol: PolySymbol


def parse_symbol(text: str) -> PolySymbol:
    return _Parser(text).parse()


def parse_observable(text: str) -> ObservableExpr:
    return ObservableExpr(text, parse_symbol(text))


def parse_rational(text: str) -> Fraction:
    """Command-line rationals: ``"3"``, ``"-1/2"``, ``"0.25"``."""
    return Fraction(text.strip())


def _monomial_text(m: int, n: int) -> str:
    parts = []
    for var, e in (("q", m), ("p", n)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def _rational_text(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"({x})"


def _coeff_text(c: CRational) -> Tuple[str, str]:
    """Sign and magnitude text of a coefficient; magnitude '' means 1."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        return sign, "" if mag == 1 else _rational_text(mag)
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_rational_text(mag)}i"
    im = f"{'+' if c.im > 0 else '-'} {abs(c.im)}i"
    return "+", f"({c.re} {im})"


def format_symbol(s: PolySymbol) -> str:
    """Canonical text: descending total degree, then descending q power.

    Real-coefficient output re-parses to an equal symbol.
    """
    if s.is_zero():
        return "0"
    ordered = sorted(s.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
    pieces = []
    for (m, n), c in ordered:
        sign, mag = _coeff_text(c)
        mono = _monomial_text(m, n)
        if not mono:
            body = str(abs(c.re)) if c.im == 0 else (mag or "1")
        elif not mag:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
