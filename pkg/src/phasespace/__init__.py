"""Phase-space formulation of quantum mechanics on polynomial observables."""

from .ensembles import (
    DeltaAt,
    Distribution,
    DispersionReport,
    classical_dispersion,
    dispersion_gap,
    expectation,
    hilbert_dispersion,
    star_dispersion,
    verify_global_df,
)
from .grid import (
    GridFunction,
    OperatorKernel,
    PhaseSpaceGrid,
    PositionGrid,
    WaveFunction,
    eval_symbol,
    symbol_of_kernel,
    trace_pair,
    wigner_of_wavefunction,
)
from .ncalg import CRational, OperatorPoly, op_add, op_adjoint, op_mul
from .oscillator import (
    OscillatorParams,
    energy_marginal,
    fock_matrices,
    ground_wavefunction,
    ground_wigner,
    hamiltonian_symbol,
)
from .parser import format_symbol, parse_observable, parse_symbol
from .star import star_consistency_check, star_grid, star_poly
from .weyl import PolySymbol, dequantize_poly, quantize_poly

__version__ = "0.1.0"
