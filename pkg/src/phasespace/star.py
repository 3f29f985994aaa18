"""Moyal star product, exact on polynomials and truncated on grids."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import GridMismatch, OrderTooHighForGrid
from .grid import GridFunction, PhaseSpaceGrid, eval_symbol
from .ncalg import CRational
from .weyl import PolySymbol

__all__ = ["star_poly", "star_grid", "star_consistency_check", "INTERIOR_MARGIN"]

# Cells excluded on every side when comparing grid results.
INTERIOR_MARGIN = 8

# Spectral derivatives are used only for functions this small at the boundary.
SPECTRAL_EDGE_TOL = 1e-12


def _bidiff_terms(k: int):
    """Yield (coeff, j) for the k-th Moyal term.

    (i/2)^k / k! * sum_j C(k, j) (-1)^(k-j) (∂_q^j ∂_p^(k-j) A)(∂_p^j ∂_q^(k-j) B)
    """
    pref = CRational(0, Fraction(1, 2)) ** k / factorial(k)
    for j in range(k + 1):
        yield pref * (comb(k, j) * (-1) ** (k - j)), j


def star_poly(A: PolySymbol, B: PolySymbol) -> PolySymbol:
    """Exact star product A * B of two polynomial symbols.

    The series stops at k = min(deg A, deg B); every later term has a
    derivative of order > deg on one side.
    """
    if A.is_zero() or B.is_zero():
        return PolySymbol()
    out = PolySymbol()
    for k in range(min(A.degree(), B.degree()) + 1):
        for c, j in _bidiff_terms(k):
            left = A.derivative(j, k - j)
            if left.is_zero():
                continue
            right = B.derivative(k - j, j)
            if right.is_zero():
                continue
            out = out + (left * right).scale(c)
    return out


# fourth-order centered first derivative
_FD4 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def _fd_derivative(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    f = np.moveaxis(f, axis, 0)
    out = np.gradient(f, h, axis=0, edge_order=2)
    if f.shape[0] >= 5:
        out[2:-2] = (_FD4[0] * f[:-4] + _FD4[1] * f[1:-3] + _FD4[3] * f[3:-1] + _FD4[4] * f[4:]) / h
    return np.moveaxis(out, 0, axis)


def _spectral_derivative(f: np.ndarray, h: float, axis: int, order: int) -> np.ndarray:
    n = f.shape[axis]
    k = 2 * np.pi * np.fft.fftfreq(n, d=h)
    mult = (1j * k) ** order
    if n % 2 == 0 and order % 2 == 1:
        mult[n // 2] = 0.0
    shape = [1] * f.ndim
    shape[axis] = n
    return np.fft.ifft(np.fft.fft(f, axis=axis) * mult.reshape(shape), axis=axis)


def _decays(f: np.ndarray) -> bool:
    edge = max(
        np.abs(f[0]).max(), np.abs(f[-1]).max(), np.abs(f[:, 0]).max(), np.abs(f[:, -1]).max()
    )
    return bool(edge < SPECTRAL_EDGE_TOL)


def _partials(f: np.ndarray, grid: PhaseSpaceGrid, order: int):
    """All mixed partials ∂_q^a ∂_p^b f with a + b <= order, keyed by (a, b)."""
    spectral = _decays(f)
    dq, dp = grid.dq, grid.dp
    out = {(0, 0): f.astype(complex)}
    for a in range(order + 1):
        if a > 0:
            if spectral:
                out[(a, 0)] = _spectral_derivative(f, dq, 0, a)
            else:
                out[(a, 0)] = _fd_derivative(out[(a - 1, 0)], dq, 0)
        for b in range(1, order - a + 1):
            if spectral:
                out[(a, b)] = _spectral_derivative(out[(a, 0)], dp, 1, b)
            else:
                out[(a, b)] = _fd_derivative(out[(a, b - 1)], dp, 1)
    return out


def star_grid(A: GridFunction, B: GridFunction, order: int) -> GridFunction:
    """Moyal series truncated after ``order`` bidifferential terms.

    Derivatives are spectral when a factor has decayed below 1e-12 at the
    grid edge, otherwise fourth-order centered differences.
    """
    if A.grid != B.grid:
        raise GridMismatch("star_grid operands live on different grids")
    if order < 0:
        raise ValueError("order must be non-negative")
    grid = A.grid
    if 4 * order + 1 > min(grid.n_q, grid.n_p):
        raise OrderTooHighForGrid(
            f"order {order} needs a {4 * order + 1}-point stencil; grid is {grid.n_q}x{grid.n_p}"
        )
    dA = _partials(A.values, grid, order)
    dB = _partials(B.values, grid, order)
    total = np.zeros(grid.shape, dtype=complex)
    for k in range(order + 1):
        for c, j in _bidiff_terms(k):
            total += complex(c) * dA[(j, k - j)] * dB[(k - j, j)]
    return GridFunction(grid, total)


def star_consistency_check(A: PolySymbol, B: PolySymbol, grid: PhaseSpaceGrid) -> float:
    """Max interior deviation between the grid and exact star products."""
    order = max(A.degree(), 0) + max(B.degree(), 0)
    numeric = star_grid(eval_symbol(A, grid), eval_symbol(B, grid), order)
    exact = eval_symbol(star_poly(A, B), grid)
    m = INTERIOR_MARGIN
    diff = np.abs(numeric.values - exact.values)[m:-m, m:-m]
    return float(diff.max())
