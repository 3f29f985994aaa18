from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import symbols
from phasespace.errors import ExpressionSyntaxError, NonPolynomial
from phasespace.ncalg import CRational
from phasespace.parser import format_symbol, parse_observable, parse_rational, parse_symbol
from phasespace.star import star_poly
from phasespace.weyl import P, PolySymbol, Q


@pytest.mark.parametrize("text, expected", [
    ("q", Q),
    ("  p ", P),
    ("q*p", Q * P),
    ("q^2 + p^2", Q * Q + P * P),
    ("(q+p)^2", Q * Q + (Q * P).scale(2) + P * P),
    ("-q + 1/2", -Q + PolySymbol.constant(Fraction(1, 2))),
    ("2*q/3", Q.scale(Fraction(2, 3))),
    ("1/2*p^2 + 1/2*q^2", (P * P + Q * Q).scale(Fraction(1, 2))),
    ("q^0", PolySymbol.constant(1)),
    ("(q)^3*p", Q ** 3 * P),
])
def test_parse(text, expected):
    assert parse_symbol(text) == expected


@pytest.mark.parametrize("text, position", [
    ("q +* p", 3),
    ("q^", 2),
    ("(q", 2),
    ("q % p", 2),
    ("", 0),
    ("q p", 2),
    ("q^-1", 2),
])
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_symbol(text)
    assert exc.value.position == position


@pytest.mark.parametrize("text", ["q/p", "1/0", "p/(q+1)"])
def test_non_polynomial(text):
    with pytest.raises(NonPolynomial):
        parse_symbol(text)


def test_observable_keeps_source():
    obs = parse_observable("q*p")
    assert obs.source == "q*p" and obs.symbol == Q * P


@pytest.mark.parametrize("text, value", [("3", 3), ("-1/2", Fraction(-1, 2)), ("0.25", Fraction(1, 4))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("s, text", [
    (PolySymbol(), "0"),
    (Q * P, "q*p"),
    (star_poly(Q, P), "q*p + (1/2)i"),
    (-Q + PolySymbol.constant(Fraction(1, 2)), "-q + 1/2"),
    (PolySymbol({(4, 0): Fraction(1, 4), (2, 2): Fraction(1, 2), (0, 4): Fraction(1, 4), (0, 0): Fraction(-1, 4)}),
     "(1/4)*q^4 + (1/2)*q^2*p^2 + (1/4)*p^4 - 1/4"),
    (Q.scale(CRational(1, 2)), "(1 + 2i)*q"),
])
def test_format(s, text):
    assert format_symbol(s) == text


@settings(max_examples=100, deadline=None)
@given(symbols(6, real=True, max_terms=8))
def test_real_round_trip(s):
    assert parse_symbol(format_symbol(s)) == s
