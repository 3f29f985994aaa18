from fractions import Fraction

import pytest
from hypothesis import strategies as st

from phasespace.grid import PhaseSpaceGrid
from phasespace.ncalg import CRational, OperatorPoly
from phasespace.oscillator import OscillatorParams, ground_wigner
from phasespace.weyl import PolySymbol

_ACCEPTANCE = []



@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        tag, text = marker.args
        _ACCEPTANCE.append((tag, text, "PASS" if rep.passed else "FAIL", item.name))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag, text, status, name in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split("-")[1])):
        terminalreporter.write_line(f"{status} {tag}: {text} [{name}]")


@pytest.fixture(scope="session")
def default_grid():
    return PhaseSpaceGrid.default()


@pytest.fixture(scope="session")
def unit_params():
    return OscillatorParams()


@pytest.fixture(scope="session")
def ground(unit_params, default_grid):
    return ground_wigner(unit_params, default_grid)


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cr = st.builds(CRational, small_rationals, small_rationals)
real_cr = st.builds(CRational, small_rationals)


def _keys(max_degree):
    return st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(
        lambda k: k[0] + k[1] <= max_degree
    )


def symbols(max_degree=4, real=False, max_terms=5):
    return st.dictionaries(_keys(max_degree), real_cr if real else cr, max_size=max_terms).map(PolySymbol)


def operators(max_degree=4, max_terms=5):
    return st.dictionaries(_keys(max_degree), cr, max_size=max_terms).map(OperatorPoly)


__all__ = ["symbols", "operators", "Fraction"]
