from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import operators, symbols
from phasespace.grid import PhaseSpaceGrid, eval_symbol, symbol_of_kernel
from phasespace.ncalg import CRational, OperatorPoly, op_adjoint, op_mul
from phasespace.oscillator import (
    OscillatorParams,
    fock_kernel,
    fock_matrices,
    hamiltonian_symbol,
    operator_matrix,
    smooth_cutoff,
)
from phasespace.weyl import P, PolySymbol, Q, dequantize_poly, quantize_poly, weyl_monomial_by_enumeration

I = CRational(0, 1)
q_hat = OperatorPoly.monomial(1, 0)
p_hat = OperatorPoly.monomial(0, 1)


def test_q2p_is_average_of_three_orderings():
    orderings = [
        op_mul(op_mul(q_hat, q_hat), p_hat),
        op_mul(op_mul(q_hat, p_hat), q_hat),
        op_mul(op_mul(p_hat, q_hat), q_hat),
    ]
    expected = (orderings[0] + orderings[1] + orderings[2]) / 3
    assert quantize_poly(Q * Q * P) == expected
    assert expected == OperatorPoly({(2, 1): 1, (1, 0): -I})


@pytest.mark.parametrize("s, A", [
    (Q, q_hat),
    (P, p_hat),
    (PolySymbol.constant(1), OperatorPoly.constant(1)),
])
def test_degree_one_is_ordering_free(s, A):
    assert quantize_poly(s) == A


def test_qp():
    average = (op_mul(q_hat, p_hat) + op_mul(p_hat, q_hat)) / 2
    assert quantize_poly(Q * P) == average == OperatorPoly({(1, 1): 1, (0, 0): -I / 2})


@pytest.mark.parametrize("m, n", [(m, n) for m in range(5) for n in range(5)])
def test_closed_form_matches_enumeration(m, n):
    assert quantize_poly(PolySymbol.monomial(m, n)) == weyl_monomial_by_enumeration(m, n)


def test_dequantize_q2p2():
    sym = dequantize_poly(OperatorPoly.monomial(2, 2))
    assert sym == PolySymbol({(2, 2): 1, (1, 1): 2 * I, (0, 0): Fraction(-1, 2)})


def test_dequantize_q2p2_against_fock_kernel():
    # numeric Weyl transform of the (tapered) Fock matrix of q̂²p̂²
    params = OscillatorParams()
    g = PhaseSpaceGrid(-14.0, 14.0, 448, -14.0, 14.0, 448)
    fock = fock_matrices(params, 96)
    taper = np.diag(smooth_cutoff(96))
    A = OperatorPoly.monomial(2, 2)
    K = fock_kernel(taper @ operator_matrix(A, fock) @ taper, params, g.position_grid())
    numeric = symbol_of_kernel(K, g).values
    q, p = g.mesh()
    expected = q * q * p * p + 2j * q * p - 0.5
    inside = q * q + p * p < 9
    assert np.abs(numeric - expected)[inside].max() < 1e-6


def test_dequantize_degree_one():
    assert dequantize_poly(q_hat) == Q


def test_oscillator_square():
    H = hamiltonian_symbol(OscillatorParams())
    Hh = quantize_poly(H)
    expected = PolySymbol({(0, 4): Fraction(1, 4), (4, 0): Fraction(1, 4), (2, 2): Fraction(1, 2), (0, 0): Fraction(-1, 4)})
    assert dequantize_poly(op_mul(Hh, Hh)) == expected


@pytest.mark.parametrize("m, omega", [(1, 1), (1, 2), (2, 1), (Fraction(3, 2), Fraction(1, 3))])
def test_assumption_one_violation(m, omega):
    params = OscillatorParams(m, omega)
    H = hamiltonian_symbol(params)
    Hh = quantize_poly(H)
    diff = dequantize_poly(op_mul(Hh, Hh)) - dequantize_poly(Hh) * dequantize_poly(Hh)
    assert diff == PolySymbol.constant(-Fraction(omega) ** 2 / 4)


@settings(max_examples=80, deadline=None)
@given(symbols(8, max_terms=8))
def test_round_trip(s):
    assert dequantize_poly(quantize_poly(s)) == s


@settings(max_examples=80, deadline=None)
@given(operators(8, max_terms=8))
def test_inverse_round_trip(A):
    assert quantize_poly(dequantize_poly(A)) == A


@settings(max_examples=60, deadline=None)
@given(symbols(6, real=True))
def test_real_symbols_quantize_to_self_adjoint(s):
    A = quantize_poly(s)
    assert op_adjoint(A) == A


@settings(max_examples=40, deadline=None)
@given(symbols(5), symbols(5))
def test_linearity(a, b):
    c = CRational(Fraction(2, 3), Fraction(-1, 5))
    assert quantize_poly(a + b.scale(c)) == quantize_poly(a) + quantize_poly(b).scale(c)
    A, B = quantize_poly(a), quantize_poly(b)
    assert dequantize_poly(A + B.scale(c)) == dequantize_poly(A) + dequantize_poly(B).scale(c)


def test_numeric_exact_agreement_random_operators():
    import random
    from phasespace.randpoly import random_operator

    rng = random.Random(7)
    params = OscillatorParams()
    g = PhaseSpaceGrid(-14.0, 14.0, 448, -14.0, 14.0, 448)
    fock = fock_matrices(params, 96)
    taper = np.diag(smooth_cutoff(96))
    q, p = g.mesh()
    inside = q * q + p * p < 16
    for _ in range(4):
        A = random_operator(rng, 4)
        K = fock_kernel(taper @ operator_matrix(A, fock) @ taper, params, g.position_grid())
        dev = np.abs(symbol_of_kernel(K, g).values - eval_symbol(dequantize_poly(A), g).values)
        assert dev[inside].max() < 1e-4
