from fractions import Fraction

import numpy as np
import pytest

from phasespace.ensembles import classical_dispersion, dispersion_gap, expectation
from phasespace.errors import GridTooNarrow
from phasespace.grid import PhaseSpaceGrid, PositionGrid, wigner_of_wavefunction
from phasespace.oscillator import (
    OscillatorParams,
    energy_marginal,
    fock_matrices,
    ground_wavefunction,
    ground_wigner,
    hamiltonian_symbol,
    hermite_functions,
    smooth_cutoff,
)
from phasespace.star import INTERIOR_MARGIN
from phasespace.weyl import PolySymbol


def test_params_are_exact():
    p = OscillatorParams("3/2", Fraction(2, 3))
    assert p.m == Fraction(3, 2) and p.a2 == 1 and p.e0 == Fraction(1, 3)
    with pytest.raises(ValueError):
        OscillatorParams(0, 1)


def test_hamiltonian_symbol():
    H = hamiltonian_symbol(OscillatorParams(2, 3))
    assert H == PolySymbol({(0, 2): Fraction(1, 4), (2, 0): 9})


@pytest.mark.parametrize("m, omega", [(1, 1), (2, 1), (1, Fraction(1, 2))])
def test_ground_wavefunction(m, omega):
    params = OscillatorParams(m, omega)
    xg = PositionGrid(-12.0, 12.0, 384)
    psi = ground_wavefunction(params, xg)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    var = float(np.sum(xg.x ** 2 * np.abs(psi.values) ** 2) * xg.dx)
    assert var == pytest.approx(params.sigma_q ** 2, abs=1e-12)


def test_coverage_check():
    params = OscillatorParams(1, Fraction(1, 4))
    with pytest.raises(GridTooNarrow):
        ground_wavefunction(params, PositionGrid(-8.0, 8.0, 256))
    with pytest.raises(GridTooNarrow):
        ground_wigner(OscillatorParams(1, 4), PhaseSpaceGrid.default())


def test_ground_wigner_values(default_grid):
    w = ground_wigner(OscillatorParams(), default_grid)
    q, p = default_grid.mesh()
    np.testing.assert_allclose(w.density.values.real, np.exp(-(q * q + p * p)) / np.pi, atol=1e-15)
    w2 = ground_wigner(OscillatorParams(2, 1), default_grid)
    np.testing.assert_allclose(w2.density.values.real, np.exp(-(p * p / 2 + 2 * q * q)) / np.pi, atol=1e-15)
    assert w.density.integrate().real == pytest.approx(1.0, abs=1e-12)


def test_two_constructions_agree(default_grid):
    params = OscillatorParams()
    w = ground_wigner(params, default_grid)
    W = wigner_of_wavefunction(ground_wavefunction(params, default_grid.position_grid()), default_grid)
    m = INTERIOR_MARGIN
    assert np.abs(W.values - w.density.values)[m:-m, m:-m].max() < 1e-10


def test_fock_commutator_and_spectrum():
    fock = fock_matrices(OscillatorParams(1, 2), 32)
    comm = fock.Q @ fock.P - fock.P @ fock.Q
    np.testing.assert_allclose(comm[:-1, :-1], 1j * np.eye(31), atol=1e-12)
    H = fock.hamiltonian()
    np.testing.assert_allclose(np.diag(H)[:-1].real, 2 * (np.arange(31) + 0.5), atol=1e-12)
    assert np.abs(H[:-1, :-1] - np.diag(np.diag(H[:-1, :-1]))).max() < 1e-12


def test_hermite_functions_orthonormal():
    xg = PositionGrid(-12.0, 12.0, 384)
    phi = hermite_functions(OscillatorParams(), xg.x, 30)
    np.testing.assert_allclose(phi @ phi.T * xg.dx, np.eye(30), atol=1e-12)


def test_smooth_cutoff_shape():
    t = smooth_cutoff(100)
    assert t[0] == pytest.approx(1.0) and t[-1] < 1e-10
    assert np.all(np.diff(t) <= 0)


def test_energy_marginal(default_grid, unit_params):
    em = energy_marginal(ground_wigner(unit_params, default_grid), unit_params, 48)
    assert em.total() == pytest.approx(1.0, abs=1e-12)
    assert len(em.density) == 48
    assert em.bin_edges[-1] == pytest.approx(6.0)
    assert em.mean == pytest.approx(0.5, rel=1e-6)
    assert em.variance == pytest.approx(0.25, rel=1e-6)


def test_marginal_matches_moment_chain(default_grid, unit_params):
    w = ground_wigner(unit_params, default_grid)
    em = energy_marginal(w, unit_params)
    H = hamiltonian_symbol(unit_params)
    assert em.mean == pytest.approx(expectation(H, w), rel=1e-10)
    assert em.variance == pytest.approx(classical_dispersion(H, w), rel=1e-10)


@pytest.mark.parametrize("m, omega", [(1, Fraction(1, 2)), (2, 1), (Fraction(1, 2), 2)])
def test_gap_scaling(m, omega):
    params = OscillatorParams(m, omega)
    w = ground_wigner(params, PhaseSpaceGrid(-12.0, 12.0, 384, -12.0, 12.0, 384))
    r = dispersion_gap(hamiltonian_symbol(params), w)
    e0 = float(params.e0)
    assert r.mean == pytest.approx(e0, rel=1e-9)
    assert r.gap == pytest.approx(e0 ** 2, rel=1e-8)
    assert abs(r.star_variance) < 1e-9
