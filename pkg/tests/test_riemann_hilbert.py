import numpy as np
import pytest

from qspkit.bench import random_target
from qspkit.errors import SingularSystem, ValidationError
from qspkit.nlft import NlftPair, forward_nlft, layer_strip
from qspkit.riemann_hilbert import NlftSequence, build_system, inverse_nlft_direct, toeplitz_block
from qspkit.weiss import complete

from conftest import complex_normal


def test_toeplitz_block_is_lower_triangular():
    T = toeplitz_block([1, 2, 3, 4], 1).matrix()
    np.testing.assert_array_equal(T, [[4, 0, 0], [3, 4, 0], [2, 3, 4]])


def test_zero_c_hat_gives_identity():
    A, rhs = build_system(np.zeros(4), 1)
    np.testing.assert_array_equal(A, np.eye(6))
    np.testing.assert_array_equal(rhs, [0, 0, 0, 0, 0, 1])
    F = inverse_nlft_direct(np.zeros(4))
    np.testing.assert_array_equal(F.values, np.zeros(4))


def test_smallest_slice():
    c = 0.3 - 0.8j
    A, _ = build_system([0.1, 0.2, c], 2)
    np.testing.assert_allclose(A, [[1, -c], [np.conj(c), 1]])


def test_imaginary_c_hat_recovers_base_case():
    c = 1j * np.array([0.2, -0.5, 0.7])
    A, _ = build_system(c, 0)
    T = toeplitz_block(c, 0).matrix()
    np.testing.assert_allclose(A[3:, :3], -T)


def test_single_entry():
    assert inverse_nlft_direct([0.4 + 0.2j]).values[0] == pytest.approx(0.4 + 0.2j, abs=1e-15)


def test_constant_half_end_to_end():
    from qspkit.poly import LaurentPolynomial as LP

    res = complete(LP(0, [0.5]))
    F = inverse_nlft_direct(res.c_hat)
    assert F.values[0] == pytest.approx(1 / np.sqrt(3), abs=1e-15)
    pair = forward_nlft(F)
    assert pair.b.coeffs[0] == pytest.approx(0.5, abs=1e-15)
    assert pair.a.coeffs[0] == pytest.approx(np.sqrt(3) / 2, abs=1e-15)


def test_imaginary_target_matches_layer_stripping(rng):
    b = random_target(5, 0.5, rng)
    b = type(b)(0, 1j * np.abs(b.coeffs))
    b = b * (0.5 / np.abs(b.coeffs).sum())
    res = complete(b)
    F = inverse_nlft_direct(res.c_hat)
    ref = layer_strip(NlftPair(res.a, b))
    assert np.max(np.abs(F.values - ref.values)) <= 1e-12


@pytest.mark.parametrize("n", [10, 60, 200])
def test_reconstruction(n):
    b = random_target(n, 0.5, n)
    res = complete(b, eta=0.5)
    F = inverse_nlft_direct(res.c_hat)
    back = forward_nlft(F)
    err = np.sqrt(np.sum(np.abs((back.a - res.a).coeffs) ** 2) + np.sum(np.abs((back.b - b).coeffs) ** 2))
    assert err <= 1e-12


@pytest.mark.parametrize("kind", ["imag", "real"])
def test_subalgebra_preserved(rng, kind):
    c = complex_normal(rng, 20).real * 0.05
    c_hat = 1j * c if kind == "imag" else c.astype(complex)
    F = inverse_nlft_direct(c_hat).values
    if kind == "imag":
        assert np.max(np.abs(F.real)) <= 1e-12
    else:
        assert np.max(np.abs(F.imag)) <= 1e-12


def test_slice_constant_terms_positive(rng):
    from qspkit.riemann_hilbert import solve_slice

    c_hat = 0.2 * complex_normal(rng, 15)
    for k in range(15):
        _, a0 = solve_slice(c_hat, k)
        assert a0.real > 0 and abs(a0.imag) <= 1e-13


def test_singular_system_reported(monkeypatch):
    import qspkit.riemann_hilbert as rh

    monkeypatch.setattr(rh, "COND_LIMIT", 0.5)
    with pytest.raises(SingularSystem):
        inverse_nlft_direct([0.3, 0.1])


def test_rejects_empty():
    with pytest.raises(ValidationError):
        inverse_nlft_direct([])


def test_sequence_rejects_nonfinite():
    with pytest.raises(ValidationError):
        NlftSequence(0, [np.nan])
