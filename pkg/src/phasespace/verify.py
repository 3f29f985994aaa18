"""Invariant suites run by ``phasespace verify``.

Every check is deterministic for a given seed and reports a named pass/fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from . import ensembles, grid, ncalg, oscillator, star, weyl
from .errors import UnknownSuite
from .randpoly import random_operator, random_point, random_symbol

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(results, suite, name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed invariant, not an abort
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    results.append(CheckResult(suite, name, bool(ok), detail))


def _algebra(rng: random.Random) -> List[CheckResult]:
    out: List[CheckResult] = []
    s = "algebra"

    def assoc():
        for _ in range(20):
            A, B, C = (random_operator(rng, 4) for _ in range(3))
            if ncalg.op_mul(ncalg.op_mul(A, B), C) != ncalg.op_mul(A, ncalg.op_mul(B, C)):
                return False, f"failed for {A}, {B}, {C}"
        return True, "20 triples"

    def commutator():
        q, p = ncalg.Q_HAT, ncalg.P_HAT
        diff = ncalg.op_mul(q, p) - ncalg.op_mul(p, q)
        return diff == ncalg.OperatorPoly.constant(ncalg.CRational(0, 1)), str(diff)

    def degree():
        for _ in range(20):
            A, B = random_operator(rng, 4), random_operator(rng, 4)
            if ncalg.op_mul(A, B).degree() != A.degree() + B.degree():
                return False, f"failed for {A}, {B}"
        return True, "20 pairs"

    def adjoint():
        for _ in range(20):
            A = random_operator(rng, 5)
            if ncalg.op_adjoint(ncalg.op_adjoint(A)) != A:
                return False, f"failed for {A}"
        return True, "20 operators"

    def oracle():
        fock = oscillator.fock_matrices(oscillator.OscillatorParams(), 64)
        worst = 0.0
        for _ in range(10):
            A, B = random_operator(rng, 4), random_operator(rng, 4)
            r = fock.n_max - A.degree() - B.degree()
            lhs = oscillator.operator_matrix(ncalg.op_mul(A, B), fock)[:r, :r]
            rhs = (oscillator.operator_matrix(A, fock) @ oscillator.operator_matrix(B, fock))[:r, :r]
            worst = max(worst, float(np.abs(lhs - rhs).max() / max(1.0, np.abs(rhs).max())))
        return worst < 1e-10, f"max relative deviation {worst:.3g}"

    _check(out, s, "associativity", assoc)
    _check(out, s, "commutator-identity", commutator)
    _check(out, s, "degree-additivity", degree)
    _check(out, s, "adjoint-involution", adjoint)
    _check(out, s, "fock-oracle-consistency", oracle)
    return out


def _weyl(rng: random.Random) -> List[CheckResult]:
    out: List[CheckResult] = []
    s = "weyl"

    def round_trip():
        for _ in range(30):
            A = random_symbol(rng, 8, real=False)
            if weyl.dequantize_poly(weyl.quantize_poly(A)) != A:
                return False, f"failed for {A}"
        return True, "30 symbols"

    def inverse_round_trip():
        for _ in range(30):
            A = random_operator(rng, 8)
            if weyl.quantize_poly(weyl.dequantize_poly(A)) != A:
                return False, f"failed for {A}"
        return True, "30 operators"

    def enumeration():
        for m in range(5):
            for n in range(5):
                closed = weyl.quantize_poly(weyl.PolySymbol.monomial(m, n))
                if closed != weyl.weyl_monomial_by_enumeration(m, n):
                    return False, f"q^{m} p^{n}"
        return True, "all q^m p^n with m, n < 5"

    def hermitian():
        for _ in range(20):
            Ah = weyl.quantize_poly(random_symbol(rng, 6, real=True))
            if ncalg.op_adjoint(Ah) != Ah:
                return False, f"{Ah} not self-adjoint"
        return True, "20 real symbols"

    def linear():
        for _ in range(10):
            A, B = random_symbol(rng, 5, real=False), random_symbol(rng, 5, real=False)
            c = ncalg.CRational(Fraction(rng.randint(-4, 4), 3), Fraction(rng.randint(-4, 4), 5))
            if weyl.quantize_poly(A + B.scale(c)) != weyl.quantize_poly(A) + weyl.quantize_poly(B).scale(c):
                return False, "quantize_poly not linear"
            Ah, Bh = weyl.quantize_poly(A), weyl.quantize_poly(B)
            if weyl.dequantize_poly(Ah + Bh.scale(c)) != weyl.dequantize_poly(Ah) + weyl.dequantize_poly(Bh).scale(c):
                return False, "dequantize_poly not linear"
        return True, "10 combinations"

    def assumption_one():
        H = oscillator.hamiltonian_symbol(oscillator.OscillatorParams())
        Hh = weyl.quantize_poly(H)
        diff = weyl.dequantize_poly(ncalg.op_mul(Hh, Hh)) - H * H
        return diff == weyl.PolySymbol.constant(Fraction(-1, 4)), f"symbol(Ĥ²) - H² = {diff}"

    def numeric_exact():
        params = oscillator.OscillatorParams()
        g = grid.PhaseSpaceGrid(-14.0, 14.0, 448, -14.0, 14.0, 448)
        fock = oscillator.fock_matrices(params, 96)
        taper = np.diag(oscillator.smooth_cutoff(fock.n_max))
        q, p = g.mesh()
        inside = q * q + p * p < 16.0
        worst = 0.0
        for _ in range(3):
            A = random_operator(rng, 4)
            M = taper @ oscillator.operator_matrix(A, fock) @ taper
            num = grid.symbol_of_kernel(oscillator.fock_kernel(M, params, g.position_grid()), g)
            exact = grid.eval_symbol(weyl.dequantize_poly(A), g)
            worst = max(worst, float(np.abs(num.values - exact.values)[inside].max()))
        return worst < 1e-4, f"max deviation {worst:.3g} for q²+p² < 16"

    def wigner_norm():
        params = oscillator.OscillatorParams()
        g = grid.PhaseSpaceGrid.default()
        xg = g.position_grid()
        phi = oscillator.hermite_functions(params, xg.x, 3)
        worst = 0.0
        for n in range(3):
            W = grid.wigner_of_wavefunction(grid.WaveFunction(xg, phi[n]), g)
            norm = W.integrate().real
            purity = 2 * np.pi * float(np.sum(W.values.real ** 2)) * g.cell_area
            worst = max(worst, abs(norm - 1), abs(purity - 1), W.max_imag())
        return worst < 1e-6, f"max |norm-1|, |purity-1|, imag = {worst:.3g}"

    _check(out, s, "round-trip", round_trip)
    _check(out, s, "inverse-round-trip", inverse_round_trip)
    _check(out, s, "closed-form-vs-enumeration", enumeration)
    _check(out, s, "hermiticity", hermitian)
    _check(out, s, "linearity", linear)
    _check(out, s, "assumption-one-violation", assumption_one)
    _check(out, s, "numeric-exact-agreement", numeric_exact)
    _check(out, s, "wigner-normalization-purity", wigner_norm)
    return out


def _star(rng: random.Random) -> List[CheckResult]:
    out: List[CheckResult] = []
    s = "star"
    sp = star.star_poly

    def assoc():
        for _ in range(15):
            A, B, C = (random_symbol(rng, 3, real=False) for _ in range(3))
            if sp(sp(A, B), C) != sp(A, sp(B, C)):
                return False, f"failed for {A}, {B}, {C}"
        return True, "15 triples"

    def noncommutative():
        diff = sp(weyl.Q, weyl.P) - sp(weyl.P, weyl.Q)
        return diff == weyl.PolySymbol.constant(ncalg.CRational(0, 1)), f"q*p - p*q = {diff}"

    def homomorphism():
        for _ in range(25):
            A, B = random_symbol(rng, 4, real=False), random_symbol(rng, 4, real=False)
            lhs = weyl.dequantize_poly(ncalg.op_mul(weyl.quantize_poly(A), weyl.quantize_poly(B)))
            if lhs != sp(A, B):
                return False, f"failed for {A}, {B}"
        return True, "25 pairs"

    def conjugation():
        for _ in range(20):
            A, B = random_symbol(rng, 4, real=False), random_symbol(rng, 4, real=False)
            if sp(A, B).conjugate() != sp(B.conjugate(), A.conjugate()):
                return False, f"failed for {A}, {B}"
        return True, "20 pairs"

    def hh():
        H = oscillator.hamiltonian_symbol(oscillator.OscillatorParams())
        diff = sp(H, H) - H * H
        return diff == weyl.PolySymbol.constant(Fraction(-1, 4)), f"H*H - H² = {diff}"

    def grid_paths():
        g = grid.PhaseSpaceGrid.default()
        H = oscillator.hamiltonian_symbol(oscillator.OscillatorParams())
        d1 = star.star_consistency_check(weyl.Q, weyl.P, g)
        d2 = star.star_consistency_check(H, H, g)
        return d1 <= 1e-8 and d2 <= 1e-6, f"q*p deviation {d1:.3g}, H*H deviation {d2:.3g}"

    _check(out, s, "associativity", assoc)
    _check(out, s, "noncommutativity-witness", noncommutative)
    _check(out, s, "homomorphism", homomorphism)
    _check(out, s, "conjugation", conjugation)
    _check(out, s, "oscillator-square-correction", hh)
    _check(out, s, "grid-exact-consistency", grid_paths)
    return out


def _ensembles(rng: random.Random) -> List[CheckResult]:
    out: List[CheckResult] = []
    s = "ensembles"
    params = oscillator.OscillatorParams()
    g = grid.PhaseSpaceGrid.default()
    w0 = oscillator.ground_wigner(params, g)

    def gap_identity():
        worst = 0.0
        for _ in range(10):
            A = random_symbol(rng, 3)
            rep = ensembles.dispersion_gap(A, w0)
            alt = ensembles.classical_dispersion(A, w0) - ensembles.star_dispersion(A, w0)
            worst = max(worst, abs(rep.gap - alt), abs(rep.gap - (rep.variance - rep.star_variance)))
        return worst < 1e-8, f"max deviation {worst:.3g}"

    def duality():
        worst = 0.0
        for _ in range(10):
            A = random_symbol(rng, 3)
            h = ensembles.hilbert_dispersion(weyl.quantize_poly(A), 0, params)
            ph = ensembles.star_dispersion(A, w0)
            worst = max(worst, abs(h - ph))
        return worst < 1e-6, f"max |hilbert - star| = {worst:.3g}"

    def delta_zero():
        for _ in range(20):
            e = ensembles.DeltaAt(*random_point(rng))
            A = random_symbol(rng, 6, real=False)
            if not ensembles.classical_dispersion_exact(A, e).is_zero():
                return False, f"nonzero dispersion for {A} at {e}"
        return True, "20 (symbol, point) pairs"

    def degree_one():
        worst = 0.0
        for _ in range(10):
            A = random_symbol(rng, 1)
            worst = max(worst, abs(ensembles.dispersion_gap(A, w0).gap))
        return worst < 1e-12, f"max |gap| = {worst:.3g}"

    def nonnegative():
        worst = 0.0
        for _ in range(10):
            A = random_symbol(rng, 4)
            worst = min(worst, ensembles.classical_dispersion(A, w0))
        return worst >= -1e-10, f"min dispersion {worst:.3g}"

    _check(out, s, "gap-identity", gap_identity)
    _check(out, s, "hilbert-phase-space-duality", duality)
    _check(out, s, "delta-globally-dispersion-free", delta_zero)
    _check(out, s, "degree-one-zero-gap", degree_one)
    _check(out, s, "nonnegative-classical-dispersion", nonnegative)
    return out


def _oscillator(rng: random.Random) -> List[CheckResult]:
    out: List[CheckResult] = []
    s = "oscillator"
    params = oscillator.OscillatorParams()
    g = grid.PhaseSpaceGrid.default()

    def oracle_square():
        fock = oscillator.fock_matrices(params, 64)
        H = oscillator.hamiltonian_symbol(params)
        Hf = fock.hamiltonian()
        r = fock.reliable(4)
        sq = (Hf @ Hf)[:r, :r]
        classical = oscillator.operator_matrix(weyl.quantize_poly(H * H), fock)[:r, :r]
        shift = sq - classical
        const = float(np.real(np.mean(np.diag(shift))))
        off = float(np.abs(shift - const * np.eye(r)).max())
        Hh = weyl.quantize_poly(H)
        exact = weyl.dequantize_poly(ncalg.op_mul(Hh, Hh))
        via_exact = oscillator.operator_matrix(weyl.quantize_poly(exact), fock)[:r, :r]
        dev = float(np.abs(sq - via_exact).max())
        ok = abs(const + 0.25) < 1e-10 and off < 1e-10 and dev < 1e-10
        return ok, f"Ĥ² - Weyl(H²) = {const:.12g}·1 (off-diagonal {off:.2g}), exact path deviation {dev:.2g}"

    def marginal_chain():
        w = oscillator.ground_wigner(params, g)
        H = oscillator.hamiltonian_symbol(params)
        em = oscillator.energy_marginal(w, params, 64)
        mean, var = ensembles.expectation(H, w), ensembles.classical_dispersion(H, w)
        rel = max(abs(em.mean - mean) / mean, abs(em.variance - var) / var)
        return rel < 1e-3, f"relative deviation {rel:.3g}"

    def two_constructions():
        w = oscillator.ground_wigner(params, g)
        psi = oscillator.ground_wavefunction(params, g.position_grid())
        W = grid.wigner_of_wavefunction(psi, g)
        m = star.INTERIOR_MARGIN
        dev = float(np.abs(W.values - w.density.values)[m:-m, m:-m].max())
        return dev < 1e-8, f"max deviation {dev:.3g}"

    def scaling():
        worst = 0.0
        for omega in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)):
            pr = oscillator.OscillatorParams(1, omega)
            gg = g if omega <= 2 else grid.PhaseSpaceGrid(-8.0, 8.0, 256, -12.0, 12.0, 256)
            gap = ensembles.dispersion_gap(oscillator.hamiltonian_symbol(pr), oscillator.ground_wigner(pr, gg)).gap
            expect = float(omega / 2) ** 2
            worst = max(worst, abs(gap - expect) / expect)
        return worst < 1e-6, f"max relative deviation {worst:.3g}"

    _check(out, s, "fock-oracle-square-correction", oracle_square)
    _check(out, s, "energy-marginal-moment-chain", marginal_chain)
    _check(out, s, "wigner-two-constructions", two_constructions)
    _check(out, s, "gap-scaling", scaling)
    return out


SUITES: Dict[str, Callable[[random.Random], List[CheckResult]]] = {
    "algebra": _algebra,
    "weyl": _weyl,
    "star": _star,
    "ensembles": _ensembles,
    "oscillator": _oscillator,
}


def run_suite(name: str, seed: int = 0) -> List[CheckResult]:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    results: List[CheckResult] = []
    for n in names:
        rng = random.Random(f"{seed}:{n}")
        results.extend(SUITES[n](rng))
    return results
