"""Exact noncommutative polynomial algebra in q̂, p̂ with [q̂, p̂] = i (ħ = 1).

Operators are kept in standard order: every monomial is q̂^a p̂^b with all
position factors to the left. Coefficients are exact complex rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Dict, Iterator, Mapping, Tuple, Union

__all__ = [
    "CRational",
    "OperatorPoly",
    "op_add",
    "op_mul",
    "op_adjoint",
    "reorder_pq",
]

Exponents = Tuple[int, int]
Scalar = Union["CRational", Rational, int]


class CRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "CRational":
        if isinstance(x, CRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, (int, Rational)):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to CRational")

    def __add__(self, other):
        try:
            o = CRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = CRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return CRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = CRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CRational(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("CRational division by zero")
        num = self * o.conjugate()
        return CRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return CRational.coerce(other) / self

    def __neg__(self):
        return CRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = CRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "CRational":
        return CRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = CRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im != 0:
            raise TypeError(f"{self!r} has a nonzero imaginary part")
        return float(self.re)

    def __repr__(self):
        if self.im == 0:
            return f"CRational({self.re})"
        return f"CRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = CRational(0, 1)


class _SparsePoly:
    """Shared storage for polynomials in two variables keyed by (a, b) exponents.

    Subclasses define multiplication; everything linear lives here.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, Scalar] | None = None):
        clean: Dict[Exponents, CRational] = {}
        for key, c in (terms or {}).items():
            a, b = key
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {key}")
            c = CRational.coerce(c)
            if not c.is_zero():
                clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Exponents, CRational]):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: Scalar = 1):
        return cls({(a, b): c})

    @property
    def terms(self) -> Dict[Exponents, CRational]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, CRational]]:
        return iter(self._terms.items())

    def coeff(self, a: int, b: int) -> CRational:
        return self._terms.get((a, b), CRational(0))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Top total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def _coerce_poly(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _SparsePoly):
            return None
        try:
            return type(self).constant(CRational.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce_poly(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return self._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar):
        c = CRational.coerce(c)
        if c.is_zero():
            return self._from_clean({})
        return self._from_clean({k: v * c for k, v in self._terms.items()})

    def __truediv__(self, other):
        c = CRational.coerce(other)
        return self.scale(CRational(1) / c)

    def __eq__(self, other):
        o = self._coerce_poly(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k}: {c}" for k, c in sorted(self._terms.items()))
        return f"{type(self).__name__}({{{inner}}})"


def reorder_pq(b: int, c: int) -> Iterator[Tuple[int, CRational]]:
    """Yield (k, coeff) with p̂^b q̂^c = sum_k coeff * q̂^(c-k) p̂^(b-k).

    coeff = (-i)^k k! C(b, k) C(c, k), which follows from p̂ q̂ = q̂ p̂ - i.
    """
    minus_i = CRational(0, -1)
    for k in range(min(b, c) + 1):
        yield k, (minus_i ** k) * (factorial(k) * comb(b, k) * comb(c, k))


class OperatorPoly(_SparsePoly):
    """Polynomial in q̂, p̂; key (a, b) stands for the ordered monomial q̂^a p̂^b."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, OperatorPoly):
            return op_mul(self, other)
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
        out = OperatorPoly.constant(1)
        for _ in range(n):
            out = op_mul(out, self)
        return out

    def adjoint(self) -> "OperatorPoly":
        return op_adjoint(self)

    def is_self_adjoint(self) -> bool:
        return op_adjoint(self) == self


Q_HAT = OperatorPoly.monomial(1, 0)
P_HAT = OperatorPoly.monomial(0, 1)


def op_add(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    return A + B


def op_mul(A: OperatorPoly, B: OperatorPoly) -> OperatorPoly:
    """Product in standard order.

    q̂^a p̂^b · q̂^c p̂^d is resolved by moving p̂^b through q̂^c, which leaves
    q̂^(a+c-k) p̂^(b+d-k) with the coefficients from :func:`reorder_pq`.
    """
    out: Dict[Exponents, CRational] = {}
    for (a, b), x in A._terms.items():
        for (c, d), y in B._terms.items():
            xy = x * y
            for k, r in reorder_pq(b, c):
                key = (a + c - k, b + d - k)
                v = out.get(key)
                v = xy * r if v is None else v + xy * r
                out[key] = v
    return OperatorPoly._from_clean({k: v for k, v in out.items() if not v.is_zero()})


def op_adjoint(A: OperatorPoly) -> OperatorPoly:
    """Hermitian adjoint: (c q̂^a p̂^b)† = conj(c) p̂^b q̂^a, re-canonicalized."""
    out: Dict[Exponents, CRational] = {}
    for (a, b), x in A._terms.items():
        xc = x.conjugate()
        for k, r in reorder_pq(b, a):
            key = (a - k, b - k)
            out[key] = out.get(key, CRational(0)) + xc * r
    return OperatorPoly._from_clean({k: v for k, v in out.items() if not v.is_zero()})
