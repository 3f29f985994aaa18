"""Harmonic oscillator reference states and the truncated Fock-matrix oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import erfc
from functools import cached_property

import numpy as np

from .ensembles import Distribution
from .errors import GridTooNarrow
from .grid import (
    GridFunction,
    OperatorKernel,
    PhaseSpaceGrid,
    PositionGrid,
    WaveFunction,
)
from .ncalg import OperatorPoly
from .weyl import PolySymbol

__all__ = [
    "OscillatorParams",
    "FockRep",
    "EnergyMarginal",
    "hamiltonian_symbol",
    "ground_wavefunction",
    "ground_wigner",
    "fock_matrices",
    "operator_matrix",
    "hermite_functions",
    "fock_kernel",
    "smooth_cutoff",
    "apply_operator",
    "energy_marginal",
]

# Required half-range of a grid in units of the state's standard deviation.
COVERAGE_WIDTHS = 8


@dataclass(frozen=True)
class OscillatorParams:
    m: Fraction = Fraction(1)
    omega: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        object.__setattr__(self, "omega", Fraction(self.omega))
        if self.m <= 0 or self.omega <= 0:
            raise ValueError("mass and frequency must be positive")

    @property
    def a2(self) -> Fraction:
        """Squared oscillator length 1/(m ω)."""
        return 1 / (self.m * self.omega)

    @property
    def e0(self) -> Fraction:
        return self.omega / 2

    @property
    def sigma_q(self) -> float:
        return float(np.sqrt(float(self.a2) / 2))

    @property
    def sigma_p(self) -> float:
        return float(np.sqrt(1.0 / (2 * float(self.a2))))


def hamiltonian_symbol(params: OscillatorParams) -> PolySymbol:
    m, w = params.m, params.omega
    return PolySymbol({(0, 2): 1 / (2 * m), (2, 0): m * w * w / 2})


def _covers(lo: float, hi: float, sigma: float) -> bool:
    reach = COVERAGE_WIDTHS * sigma * (1 - 1e-12)
    return lo <= -reach and hi >= reach


def ground_wavefunction(params: OscillatorParams, grid_q: PositionGrid) -> WaveFunction:
    """(mω/π)^{1/4} exp(-mω x²/2) sampled at the grid points."""
    if not _covers(grid_q.x_min, grid_q.x_max, params.sigma_q):
        raise GridTooNarrow(
            f"position grid must span ±{COVERAGE_WIDTHS}σ = ±{COVERAGE_WIDTHS * params.sigma_q:.4g}"
        )
    mw = float(params.m * params.omega)
    x = grid_q.x
    return WaveFunction(grid_q, (mw / np.pi) ** 0.25 * np.exp(-mw * x * x / 2))


def ground_wigner(params: OscillatorParams, grid: PhaseSpaceGrid) -> Distribution:
    """Closed form (1/π) exp(-(a² p² + q²/a²))."""
    if not (_covers(grid.q_min, grid.q_max, params.sigma_q)
            and _covers(grid.p_min, grid.p_max, params.sigma_p)):
        raise GridTooNarrow(
            f"grid must span ±{COVERAGE_WIDTHS} widths: "
            f"q ±{COVERAGE_WIDTHS * params.sigma_q:.4g}, p ±{COVERAGE_WIDTHS * params.sigma_p:.4g}"
        )
    a2 = float(params.a2)
    q, p = grid.mesh()
    w = np.exp(-(a2 * p * p + q * q / a2)) / np.pi
    return Distribution(GridFunction(grid, w))


@dataclass(frozen=True, eq=False)
class FockRep:
    params: OscillatorParams
    n_max: int
    Q: np.ndarray
    P: np.ndarray

    @cached_property
    def identity(self) -> np.ndarray:
        return np.eye(self.n_max, dtype=complex)

    def hamiltonian(self) -> np.ndarray:
        m, w = float(self.params.m), float(self.params.omega)
        return self.P @ self.P / (2 * m) + m * w * w * self.Q @ self.Q / 2

    def reliable(self, degree: int) -> int:
        """Size of the leading block on which a degree-``degree`` product is exact."""
        return max(self.n_max - degree, 0)


def fock_matrices(params: OscillatorParams, n_max: int = 64) -> FockRep:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    mw = float(params.m * params.omega)
    lower = np.diag(np.sqrt(np.arange(1, n_max)), 1).astype(complex)
    raise_ = lower.conj().T
    Q = np.sqrt(1.0 / (2 * mw)) * (lower + raise_)
    P = 1j * np.sqrt(mw / 2) * (raise_ - lower)
    return FockRep(params, n_max, Q, P)


def operator_matrix(A: OperatorPoly, fock: FockRep) -> np.ndarray:
    """Σ c Q^a P^b; exact on the leading ``fock.reliable(A.degree())`` block."""
    n = fock.n_max
    out = np.zeros((n, n), dtype=complex)
    qpow = {0: fock.identity}
    ppow = {0: fock.identity}
    for (a, b), c in A.items():
        for table, mat, k in ((qpow, fock.Q, a), (ppow, fock.P, b)):
            top = max(table)
            while top < k:
                table[top + 1] = table[top] @ mat
                top += 1
        out += complex(c) * (qpow[a] @ ppow[b])
    return out


def apply_operator(A: OperatorPoly, fock: FockRep, vec: np.ndarray) -> np.ndarray:
    """Â applied to a Fock coefficient vector, right to left."""
    out = np.zeros(fock.n_max, dtype=complex)
    for (a, b), c in A.items():
        v = vec.astype(complex)
        for _ in range(b):
            v = fock.P @ v
        for _ in range(a):
            v = fock.Q @ v
        out += complex(c) * v
    return out


def hermite_functions(params: OscillatorParams, x: np.ndarray, n_max: int) -> np.ndarray:
    """Rows are ⟨x|n⟩ for n < n_max, from the stable three-term recurrence."""
    mw = float(params.m * params.omega)
    xi = np.sqrt(mw) * np.asarray(x, dtype=float)
    out = np.zeros((n_max, xi.size))
    out[0] = np.pi ** -0.25 * np.exp(-xi * xi / 2)
    if n_max > 1:
        out[1] = np.sqrt(2.0) * xi * out[0]
    for n in range(1, n_max - 1):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * xi * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out * mw ** 0.25


def smooth_cutoff(n_max: int, center: float | None = None, width: float | None = None) -> np.ndarray:
    """Diagonal taper 0.5·erfc((n - center)/width) over Fock levels.

    A sharp truncation leaves edge terms whose Wigner cross-functions reach
    all the way to the origin; a smooth taper keeps the symbol of T Â T
    equal to A wherever the taper is flat.
    """
    center = 0.58 * n_max if center is None else center
    width = 0.075 * n_max if width is None else width
    return np.array([0.5 * erfc((n - center) / width) for n in range(n_max)])


def fock_kernel(matrix: np.ndarray, params: OscillatorParams, grid_q: PositionGrid) -> OperatorKernel:
    """Position kernel Σ_mn ⟨x|m⟩ M_mn ⟨n|x'⟩ of a Fock-basis matrix."""
    phi = hermite_functions(params, grid_q.x, matrix.shape[0])
    return OperatorKernel(grid_q, phi.T @ matrix @ phi)


@dataclass(frozen=True, eq=False)
class EnergyMarginal:
    """Histogram of the energy pushforward of a phase-space distribution.

    ``mean`` and ``variance`` are moments of the pushforward itself, with
    each cell's mass at its center energy, not moments of the histogram.
    """

    bin_edges: np.ndarray
    density: np.ndarray
    mean: float
    variance: float

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    @property
    def mass(self) -> np.ndarray:
        return self.density * self.widths

    def total(self) -> float:
        return float(self.mass.sum())


def energy_marginal(
    w: Distribution, params: OscillatorParams, n_bins: int = 64, subsample: int = 8
) -> EnergyMarginal:
    """Bin the mass of ``w`` by E(q,p) = ω/2 (a² p² + q²/a²).

    Each cell's mass is split evenly over ``subsample``² points inside the
    cell so bin boundaries do not follow the cell lattice. Bins are equal
    width on [0, 12 E0]; mass beyond the cut is folded into the last bin.
    """
    grid = w.grid
    a2 = float(params.a2)
    omega = float(params.omega)
    e_cut = 12 * float(params.e0)

    offs = (np.arange(subsample) + 0.5) / subsample - 0.5
    q = (grid.q[:, None] + offs[None, :] * grid.dq).ravel()
    p = (grid.p[:, None] + offs[None, :] * grid.dp).ravel()
    e_q = omega / 2 * q * q / a2
    e_p = omega / 2 * a2 * p * p
    energy = e_q[:, None] + e_p[None, :]

    cell_mass = w.density.values.real * grid.cell_area / subsample ** 2
    mass = np.repeat(np.repeat(cell_mass, subsample, axis=0), subsample, axis=1)

    edges = np.linspace(0.0, e_cut, n_bins + 1)
    hist, _ = np.histogram(np.minimum(energy, e_cut).ravel(), bins=edges, weights=mass.ravel())
    # moments of the grid measure itself: each cell's mass at its center energy
    q0, p0 = grid.mesh()
    e_center = omega / 2 * (a2 * p0 * p0 + q0 * q0 / a2)
    total = cell_mass.sum()
    mean = float((e_center * cell_mass).sum() / total)
    variance = float(((e_center - mean) ** 2 * cell_mass).sum() / total)
    return EnergyMarginal(edges, hist / np.diff(edges), mean, variance)
