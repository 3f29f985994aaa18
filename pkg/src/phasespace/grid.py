"""Numerical Weyl correspondence on uniform grids.

All grids sample cell centers: a range [lo, hi] split into n cells has
points lo + (i + 1/2) * (hi - lo) / n. Off-grid values are obtained by
band-limited (sinc) interpolation, which passes through the samples exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, GridMismatch, GridTooCoarse
from .weyl import PolySymbol

__all__ = [
    "PhaseSpaceGrid",
    "PositionGrid",
    "GridFunction",
    "WaveFunction",
    "OperatorKernel",
    "eval_symbol",
    "wigner_of_wavefunction",
    "symbol_of_kernel",
    "trace_pair",
]

_ALIGN_TOL = 1e-9
NORM_TOL = 1e-10


@dataclass(frozen=True)
class PositionGrid:
    x_min: float
    x_max: float
    n_x: int

    def __post_init__(self):
        if self.n_x < 2 or not self.x_max > self.x_min:
            raise ValueError(f"invalid position grid {self}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_x

    @property
    def x(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_x) + 0.5) * self.dx

    def index_of(self, values) -> np.ndarray:
        """Fractional sample index of each position."""
        return (np.asarray(values, dtype=float) - self.x[0]) / self.dx


@dataclass(frozen=True)
class PhaseSpaceGrid:
    q_min: float
    q_max: float
    n_q: int
    p_min: float
    p_max: float
    n_p: int

    def __post_init__(self):
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError("grid needs at least 2 cells per axis")
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid ranges must be increasing")

    @classmethod
    def default(cls) -> "PhaseSpaceGrid":
        return cls(-8.0, 8.0, 256, -8.0, 8.0, 256)

    @classmethod
    def parse(cls, text: str) -> "PhaseSpaceGrid":
        """Build from ``"qmin,qmax,nq,pmin,pmax,np"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"grid needs 6 fields, got {len(parts)}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]),
                   float(parts[3]), float(parts[4]), int(parts[5]))

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / self.n_q

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / self.n_p

    @property
    def cell_area(self) -> float:
        return self.dq * self.dp

    @property
    def shape(self):
        return (self.n_q, self.n_p)

    @property
    def q(self) -> np.ndarray:
        return self.q_min + (np.arange(self.n_q) + 0.5) * self.dq

    @property
    def p(self) -> np.ndarray:
        return self.p_min + (np.arange(self.n_p) + 0.5) * self.dp

    def mesh(self):
        return np.meshgrid(self.q, self.p, indexing="ij")

    def position_grid(self) -> PositionGrid:
        return PositionGrid(self.q_min, self.q_max, self.n_q)


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: PhaseSpaceGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise DimensionMismatch(f"values {v.shape} do not match grid {self.grid.shape}")
        object.__setattr__(self, "values", v)

    def integrate(self) -> complex:
        """Midpoint-rule integral over the grid."""
        return complex(self.values.sum() * self.grid.cell_area)

    def max_imag(self) -> float:
        return float(np.abs(self.values.imag).max())

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise GridMismatch("grid functions live on different grids")
            return GridFunction(self.grid, self.values * other.values)
        return GridFunction(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise GridMismatch("grid functions live on different grids")
            return GridFunction(self.grid, self.values + other.values)
        return GridFunction(self.grid, self.values + other)

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            return self + GridFunction(other.grid, -other.values)
        return self + (-other)


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Position-space samples of a normalized state."""

    grid: PositionGrid
    values: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_x,):
            raise DimensionMismatch(f"expected {self.grid.n_x} samples, got {v.shape}")
        object.__setattr__(self, "values", v)
        if self.check and abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"wavefunction not normalized: norm = {self.norm():.12g}")

    @classmethod
    def from_samples(cls, grid: PositionGrid, values) -> "WaveFunction":
        v = np.asarray(values, dtype=complex)
        v = v / np.sqrt(np.sum(np.abs(v) ** 2) * grid.dx)
        return cls(grid, v)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)


@dataclass(frozen=True, eq=False)
class OperatorKernel:
    """Samples K[a, b] = <x_a|A|x_b>; the identity is 1/dx on the diagonal."""

    grid: PositionGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        n = self.grid.n_x
        if v.shape != (n, n):
            raise DimensionMismatch(f"kernel must be {n}x{n}, got {v.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def identity(cls, grid: PositionGrid) -> "OperatorKernel":
        return cls(grid, np.eye(grid.n_x) / grid.dx)

    @classmethod
    def position(cls, grid: PositionGrid) -> "OperatorKernel":
        return cls(grid, np.diag(grid.x) / grid.dx)

    @classmethod
    def outer(cls, ket: WaveFunction, bra: WaveFunction | None = None) -> "OperatorKernel":
        bra = ket if bra is None else bra
        if bra.grid != ket.grid:
            raise GridMismatch("ket and bra sampled on different grids")
        return cls(ket.grid, np.outer(ket.values, bra.values.conj()))

    def matrix(self) -> np.ndarray:
        """Matrix acting on coefficient vectors psi * sqrt(dx)."""
        return self.values * self.grid.dx


def eval_symbol(s: PolySymbol, grid: PhaseSpaceGrid) -> GridFunction:
    q, p = grid.q, grid.p
    out = np.zeros(grid.shape, dtype=complex)
    for (m, n), c in s.items():
        out += complex(c) * np.outer(q ** m, p ** n)
    return GridFunction(grid, out)


def _interp_matrix(positions: np.ndarray, n: int) -> np.ndarray:
    """Rows of band-limited interpolation weights over sample indices 0..n-1.

    Rows whose position is an integer reduce to an exact unit vector.
    """
    positions = np.asarray(positions, dtype=float)
    idx = np.arange(n)
    nearest = np.rint(positions)
    aligned = np.abs(positions - nearest) < _ALIGN_TOL
    out = np.sinc(positions[:, None] - idx[None, :])
    if aligned.any():
        rows = np.nonzero(aligned)[0]
        out[rows] = 0.0
        cols = nearest[rows].astype(int)
        inside = (cols >= 0) & (cols < n)
        out[rows[inside], cols[inside]] = 1.0
    return out


def _check_nyquist(grid: PhaseSpaceGrid, dy: float):
    p_abs = float(np.abs(grid.p).max())
    limit = np.pi / dy
    if p_abs > limit:
        raise GridTooCoarse(
            f"|p| up to {p_abs:.4g} exceeds the Nyquist limit pi/dy = {limit:.4g}"
        )


def _check_q_range(grid: PhaseSpaceGrid, xgrid: PositionGrid):
    if grid.q[0] < xgrid.x[0] - _ALIGN_TOL or grid.q[-1] > xgrid.x[-1] + _ALIGN_TOL:
        raise GridMismatch("phase-space q range extends beyond the position grid")


def wigner_of_wavefunction(psi: WaveFunction, grid: PhaseSpaceGrid) -> GridFunction:
    """W(q,p) = (1/2π) ∫ dy e^{-ipy} ψ(q+y/2) ψ*(q-y/2).

    The y integral is a trapezoid sum with step 2·dx, so ψ(q ± y/2) are
    samples whenever q lies on the position lattice.
    """
    xg = psi.grid
    dy = 2.0 * xg.dx
    _check_nyquist(grid, dy)
    _check_q_range(grid, xg)
    n = xg.n_x
    shifts = np.arange(-(n - 1), n)
    s = xg.index_of(grid.q)
    prod = np.empty((grid.n_q, shifts.size), dtype=complex)
    for j, sj in enumerate(s):
        plus = _interp_matrix(sj + shifts, n) @ psi.values
        minus = plus[::-1]
        prod[j] = plus * minus.conj()
    phase = np.exp(-1j * np.outer(shifts * dy, grid.p))
    return GridFunction(grid, prod @ phase * (dy / (2.0 * np.pi)))


def symbol_of_kernel(K: OperatorKernel, grid: PhaseSpaceGrid) -> GridFunction:
    """A(q,p) = ∫ dy e^{-ipy} K(q + y/2, q - y/2), with y stepping by dx.

    Entries with an even offset a - b sit at lattice centers; odd offsets
    sit half a cell off and are interpolated along their diagonal.
    """
    xg = K.grid
    n = xg.n_x
    dx = xg.dx
    _check_nyquist(grid, dx)
    _check_q_range(grid, xg)

    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    offset = (a - b).ravel()
    center = ((a + b) // 2).ravel()
    diag = np.zeros((n, 2 * n - 1), dtype=complex)
    diag[center, offset + n - 1] = K.values.ravel()

    ks = np.arange(-(n - 1), n)
    odd = (ks % 2) != 0
    s = xg.index_of(grid.q)
    along = np.empty((grid.n_q, ks.size), dtype=complex)
    along[:, ~odd] = _interp_matrix(s, n) @ diag[:, ~odd]
    along[:, odd] = _interp_matrix(s - 0.5, n) @ diag[:, odd]

    phase = np.exp(-1j * np.outer(ks * dx, grid.p))
    return GridFunction(grid, along @ phase * dx)


def trace_pair(A: OperatorKernel, B: OperatorKernel) -> complex:
    """tr(ÂB̂) from sampled kernels."""
    if A.grid != B.grid:
        raise DimensionMismatch("kernels sampled on different position grids")
    return complex(np.sum(A.values * B.values.T) * A.grid.dx ** 2)
