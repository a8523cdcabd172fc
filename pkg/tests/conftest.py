import numpy as np
import pytest

from qspkit.poly import LaurentPolynomial
from qspkit.riemann_hilbert import NlftSequence

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def complex_normal(rng, size):
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def random_poly(rng, degree, start=0):
    return LaurentPolynomial(start, complex_normal(rng, degree + 1))


def random_sequence(rng, length, start=0, kind="complex", scale=1.0):
    if kind == "imag":
        vals = 1j * rng.uniform(-scale, scale, length)
    elif kind == "real":
        vals = rng.uniform(-scale, scale, length).astype(complex)
    else:
        vals = scale * complex_normal(rng, length)
    return NlftSequence(start, vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)
