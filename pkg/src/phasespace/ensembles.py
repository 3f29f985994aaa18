"""Ensembles over the hidden variables (q, p) and their dispersion functionals.

A :class:`DeltaAt` ensemble sits on one phase-space point and is evaluated
exactly. A :class:`Distribution` is a normalized, possibly negative, grid
density such as a Wigner function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .errors import DeltaNotAllowed, TruncationLeakage
from .grid import GridFunction, WaveFunction, eval_symbol
from .ncalg import CRational, OperatorPoly, op_mul
from .star import star_poly
from .weyl import PolySymbol

__all__ = [
    "DeltaAt",
    "Distribution",
    "Ensemble",
    "DispersionReport",
    "expectation",
    "expectation_exact",
    "classical_dispersion",
    "classical_dispersion_exact",
    "star_dispersion",
    "dispersion_gap",
    "verify_global_df",
    "hilbert_dispersion",
]

IMAG_TOL = 1e-10
NORM_TOL = 1e-6
LEAKAGE_TOL = 1e-10


@dataclass(frozen=True)
class DeltaAt:
    """Point ensemble δ(q - q0) δ(p - p0); coordinates are kept exact."""

    q: Fraction
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "p", Fraction(self.p))


@dataclass(frozen=True, eq=False)
class Distribution:
    density: GridFunction

    def __post_init__(self):
        if self.density.max_imag() > IMAG_TOL:
            raise ValueError(f"distribution has imaginary part {self.density.max_imag():.3g}")
        total = self.density.integrate().real
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"distribution integrates to {total:.10g}, not 1")

    @property
    def grid(self):
        return self.density.grid

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.sum(values * self.density.values.real) * self.grid.cell_area)


Ensemble = Union[DeltaAt, Distribution]


@dataclass(frozen=True)
class DispersionReport:
    mean: float
    second_moment: float
    variance: float
    star_variance: float
    gap: float

    def as_dict(self):
        return {
            "mean": self.mean,
            "second_moment": self.second_moment,
            "variance": self.variance,
            "star_variance": self.star_variance,
            "gap": self.gap,
        }


def _as_number(z: complex):
    return z.real if abs(z.imag) <= IMAG_TOL * max(1.0, abs(z.real)) else z


def expectation_exact(A: PolySymbol, e: DeltaAt) -> CRational:
    return A.evaluate(e.q, e.p)


def expectation(A: PolySymbol, e: Ensemble):
    """⟨A⟩ under the ensemble; real for real observables."""
    if isinstance(e, DeltaAt):
        return _as_number(complex(expectation_exact(A, e)))
    return _as_number(e.integrate(eval_symbol(A, e.grid).values))


def classical_dispersion_exact(A: PolySymbol, e: DeltaAt) -> CRational:
    return expectation_exact(A * A, e) - expectation_exact(A, e) ** 2


def classical_dispersion(A: PolySymbol, e: Ensemble):
    """∬ A² ρ - (∬ A ρ)²; zero for a point ensemble, computed in rationals."""
    if isinstance(e, DeltaAt):
        return _as_number(complex(classical_dispersion_exact(A, e)))
    a = eval_symbol(A, e.grid).values
    mean = e.integrate(a)
    return _as_number(e.integrate(a * a) - mean * mean)


def _require_distribution(w, name):
    if isinstance(w, DeltaAt):
        raise DeltaNotAllowed(
            f"{name} needs a grid distribution; on a point ensemble A*A - A² is the gap itself"
        )
    if not isinstance(w, Distribution):
        raise TypeError(f"{name} expects a Distribution, got {type(w).__name__}")


def star_dispersion(A: PolySymbol, w: Distribution):
    """∬ (A*A) w - (∬ A w)²."""
    _require_distribution(w, "star_dispersion")
    mean = w.integrate(eval_symbol(A, w.grid).values)
    second = w.integrate(eval_symbol(star_poly(A, A), w.grid).values)
    return _as_number(second - mean * mean)


def dispersion_gap(A: PolySymbol, w: Distribution) -> DispersionReport:
    """Classical and star second moments of A under w, and the gap ∬(A² - A*A) w."""
    _require_distribution(w, "dispersion_gap")
    square = A * A
    starred = star_poly(A, A)
    mean = w.integrate(eval_symbol(A, w.grid).values).real
    second = w.integrate(eval_symbol(square, w.grid).values).real
    star_second = w.integrate(eval_symbol(starred, w.grid).values).real
    gap = w.integrate(eval_symbol(square - starred, w.grid).values).real
    return DispersionReport(
        mean=mean,
        second_moment=second,
        variance=second - mean * mean,
        star_variance=star_second - mean * mean,
        gap=gap,
    )


def verify_global_df(e: DeltaAt, observables: Iterable[PolySymbol]) -> CRational:
    """Largest exact dispersion of any listed observable on a point ensemble."""
    observables = list(observables)
    if not observables:
        raise ValueError("need at least one observable")
    if not isinstance(e, DeltaAt):
        raise TypeError("verify_global_df applies to point ensembles")
    worst = None
    for A in observables:
        d = classical_dispersion_exact(A, e)
        if worst is None or abs(complex(d)) > abs(complex(worst)):
            worst = d
    return worst


def hilbert_dispersion(A_hat: OperatorPoly, state, params=None, n_max: int = 64):
    """⟨Â²⟩ - ⟨Â⟩² in a state given as a Fock index or a position wavefunction.

    Evaluated with truncated Fock matrices of the oscillator ``params``
    (m = ω = 1 by default). Raises TruncationLeakage when the state has
    weight on the levels that Â² can push past the truncation.
    """
    from .oscillator import OscillatorParams, apply_operator, fock_matrices, hermite_functions

    params = params or OscillatorParams()
    fock = fock_matrices(params, n_max)
    if isinstance(state, (int, np.integer)):
        if not 0 <= state < n_max:
            raise ValueError(f"Fock index {state} outside 0..{n_max - 1}")
        vec = np.zeros(n_max, dtype=complex)
        vec[state] = 1.0
    elif isinstance(state, WaveFunction):
        phi = hermite_functions(params, state.grid.x, n_max)
        vec = phi @ state.values * state.grid.dx
    else:
        raise TypeError("state must be a Fock index or a WaveFunction")

    square = op_mul(A_hat, A_hat)
    safe = fock.reliable(square.degree())
    leaked = 1.0 - float(np.sum(np.abs(vec[:safe]) ** 2))
    if leaked > LEAKAGE_TOL:
        raise TruncationLeakage(
            f"state weight {leaked:.3g} lies outside the first {safe} Fock levels"
        )
    mean = np.vdot(vec, apply_operator(A_hat, fock, vec))
    second = np.vdot(vec, apply_operator(square, fock, vec))
    return _as_number(complex(second - mean * mean))
