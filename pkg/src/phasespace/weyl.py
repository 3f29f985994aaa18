"""Exact Weyl correspondence between phase-space polynomials and operators.

:func:`quantize_poly` sends q^m p^n to the fully symmetrized product of m
copies of q̂ and n copies of p̂; :func:`dequantize_poly` inverts it. The
numerical (grid) half of the correspondence lives in :mod:`phasespace.grid`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Dict

from .ncalg import CRational, Exponents, OperatorPoly, _SparsePoly, op_mul

__all__ = [
    "PolySymbol",
    "quantize_poly",
    "dequantize_poly",
    "weyl_monomial_by_enumeration",
    "Q",
    "P",
]


class PolySymbol(_SparsePoly):
    """Commutative polynomial A(q, p); key (m, n) stands for q^m p^n."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, PolySymbol):
            out: Dict[Exponents, CRational] = {}
            for (a, b), x in self._terms.items():
                for (c, d), y in other._terms.items():
                    key = (a + c, b + d)
                    out[key] = out.get(key, CRational(0)) + x * y
            return PolySymbol._from_clean({k: v for k, v in out.items() if not v.is_zero()})
        if isinstance(other, _SparsePoly):
            return NotImplemented
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        out = PolySymbol.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "PolySymbol":
        return PolySymbol._from_clean({k: c.conjugate() for k, c in self._terms.items()})

    def derivative(self, dq: int = 0, dp: int = 0) -> "PolySymbol":
        """Partial derivative ∂_q^dq ∂_p^dp, exact."""
        out = {}
        for (m, n), c in self._terms.items():
            if m < dq or n < dp:
                continue
            f = (factorial(m) // factorial(m - dq)) * (factorial(n) // factorial(n - dp))
            out[(m - dq, n - dp)] = c * f
        return PolySymbol._from_clean(out)

    def evaluate(self, q, p) -> CRational:
        """Exact value at a rational point (floats are taken at their exact binary value)."""
        q = Fraction(q)
        p = Fraction(p)
        total = CRational(0)
        for (m, n), c in self._terms.items():
            total = total + c * (q ** m * p ** n)
        return total

    def __call__(self, q, p):
        return self.evaluate(q, p)


Q = PolySymbol.monomial(1, 0)
P = PolySymbol.monomial(0, 1)


@lru_cache(maxsize=None)
def _weyl_monomial(m: int, n: int) -> OperatorPoly:
    # Symmetrized q^m p^n in standard order:
    #   sum_k (-i/2)^k k! C(m,k) C(n,k) q̂^(m-k) p̂^(n-k)
    half_minus_i = CRational(0, Fraction(-1, 2))
    terms = {}
    for k in range(min(m, n) + 1):
        terms[(m - k, n - k)] = (half_minus_i ** k) * (factorial(k) * comb(m, k) * comb(n, k))
    return OperatorPoly(terms)


def quantize_poly(s: PolySymbol) -> OperatorPoly:
    """Weyl-ordered operator of a phase-space polynomial (linear in ``s``)."""
    out = OperatorPoly()
    for (m, n), c in s.items():
        out = out + _weyl_monomial(m, n).scale(c)
    return out


def dequantize_poly(A: OperatorPoly) -> PolySymbol:
    """Weyl symbol of a standard-ordered operator.

    The Weyl image of q^m p^n is q̂^m p̂^n plus terms of strictly lower total
    degree, so the inverse peels off the highest-degree term repeatedly.
    """
    remaining = A
    out: Dict[Exponents, CRational] = {}
    while not remaining.is_zero():
        (a, b), c = max(remaining.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))
        out[(a, b)] = out.get((a, b), CRational(0)) + c
        remaining = remaining - _weyl_monomial(a, b).scale(c)
    return PolySymbol(out)


def weyl_monomial_by_enumeration(m: int, n: int) -> OperatorPoly:
    """Average over every distinct word with m q̂'s and n p̂'s, multiplied out.

    Exponential in m + n; kept as an independent reference for the closed form.
    """
    q_hat = OperatorPoly.monomial(1, 0)
    p_hat = OperatorPoly.monomial(0, 1)
    total = OperatorPoly()
    count = 0
    for q_slots in combinations(range(m + n), m):
        prod = OperatorPoly.constant(1)
        for pos in range(m + n):
            prod = op_mul(prod, q_hat if pos in q_slots else p_hat)
        total = total + prod
        count += 1
    return total / count
