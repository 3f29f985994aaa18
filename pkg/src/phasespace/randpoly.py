"""Seeded random polynomials for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .ncalg import CRational, OperatorPoly
from .weyl import PolySymbol


def _rand_rational(rng: random.Random, span: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def _rand_terms(rng: random.Random, max_degree: int, real: bool, n_terms: int | None):
    degree = rng.randint(0, max_degree)
    keys = [(a, d - a) for d in range(degree + 1) for a in range(d + 1)]
    if n_terms is None:
        n_terms = rng.randint(1, min(len(keys), 6))
    terms = {}
    for key in rng.sample(keys, min(n_terms, len(keys))):
        im = 0 if real else _rand_rational(rng)
        terms[key] = CRational(_rand_rational(rng), im)
    # pin one term at the drawn degree so the degree is exact
    top = rng.randint(0, degree)
    key = (top, degree - top)
    terms[key] = CRational(rng.choice([-3, -2, -1, 1, 2, 3]), 0 if real else _rand_rational(rng))
    return terms


def random_symbol(rng: random.Random, max_degree: int, real: bool = True,
                  n_terms: int | None = None) -> PolySymbol:
    return PolySymbol(_rand_terms(rng, max_degree, real, n_terms))


def random_operator(rng: random.Random, max_degree: int, real: bool = False,
                    n_terms: int | None = None) -> OperatorPoly:
    return OperatorPoly(_rand_terms(rng, max_degree, real, n_terms))


def random_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    return (Fraction(rng.randint(-40, 40), rng.randint(1, 16)),
            Fraction(rng.randint(-40, 40), rng.randint(1, 16)))
