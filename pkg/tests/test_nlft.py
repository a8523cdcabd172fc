import numpy as np
import pytest

from qspkit.errors import Degenerate, ValidationError
from qspkit.gqsp import GqspPhaseFactors, phases_from_sequence
from qspkit.nlft import (NlftPair, Su2Sample, _factor, check_properties, evaluate_protocol,
                         forward_nlft, layer_strip, nlft_protocol_value, rx, ry, rz)
from qspkit.poly import LaurentPolynomial as LP
from qspkit.riemann_hilbert import NlftSequence

from conftest import random_sequence


def _dense_product(F: NlftSequence, z):
    M = np.eye(2, dtype=complex)
    for k, f in zip(range(F.support_start, F.support_end + 1), F.values):
        M = M @ np.array([[1, f * z ** k], [-np.conj(f) * z ** -k, 1]]) / np.sqrt(1 + abs(f) ** 2)
    return M


def test_empty_sequence_is_identity():
    pair = forward_nlft(NlftSequence(0, []))
    assert pair.a == LP.constant(1.0) and pair.b == LP.zero()


def test_single_factor():
    f = 0.5 - 0.25j
    pair = forward_nlft(NlftSequence(3, [f]))
    s = np.sqrt(1 + abs(f) ** 2)
    assert pair.a.support_start == 0 and pair.a.coeffs[0] == pytest.approx(1 / s)
    assert pair.b.support_start == 3 and pair.b.coeffs[0] == pytest.approx(f / s)


def test_two_factors_on_grid():
    F = NlftSequence(0, [1j, 1j])
    pair = forward_nlft(F)
    for z in np.exp(2j * np.pi * np.arange(8) / 8):
        np.testing.assert_allclose(pair(z), _dense_product(F, z), atol=1e-15)
    # closed form: (1 - z^-1)/2, i(1 + z)/2
    np.testing.assert_allclose(pair.a.coeffs, [-0.5, 0.5])
    np.testing.assert_allclose(pair.b.coeffs, [0.5j, 0.5j])


def test_matches_dense_product(rng):
    F = random_sequence(rng, 12, start=-4)
    pair = forward_nlft(F)
    for z in np.exp(2j * np.pi * rng.random(5)):
        np.testing.assert_allclose(pair(z), _dense_product(F, z), atol=1e-13)


def test_supports(rng):
    pair = forward_nlft(random_sequence(rng, 6, start=2))
    assert (pair.a.support_start, pair.a.support_end) == (-5, 0)
    assert (pair.b.support_start, pair.b.support_end) == (2, 7)
    assert pair.a.coeffs[-1].real > 0


def test_shift_property(rng):
    F = random_sequence(rng, 20, start=0)
    assert check_properties(F, rng, shift=3).shift <= 1e-13


@pytest.mark.parametrize("kind", ["complex", "imag", "real"])
def test_all_properties(rng, kind):
    for length in (1, 2, 17, 40):
        rep = check_properties(random_sequence(rng, length, start=int(rng.integers(-3, 4)), kind=kind), rng)
        assert rep.max() <= 1e-12, rep.as_dict()


def test_phase_rotation_by_i(rng):
    F = random_sequence(rng, 9, start=0)
    base = forward_nlft(F)
    g = forward_nlft(NlftSequence(0, 1j * F.values))
    assert g.a.max_abs_diff(base.a) <= 1e-14
    assert g.b.max_abs_diff(base.b * 1j) <= 1e-14


def test_composition_exact_for_factors():
    pair = _factor(0.3, 0) @ _factor(-0.2j, 1)
    assert pair.max_abs_diff(forward_nlft(NlftSequence(0, [0.3, -0.2j]))) <= 1e-15


def test_bare_signal_operator():
    ph = GqspPhaseFactors(0.0, [0.0, 0.0], [0.0, 0.0])
    np.testing.assert_allclose(evaluate_protocol(ph, 1j).matrix, np.diag([1j, 1]), atol=1e-15)


def test_rotations():
    phi = 0.37
    np.testing.assert_allclose(rz(np.pi / 4) @ rx(phi) @ rz(-np.pi / 4), ry(-phi), atol=1e-15)
    np.testing.assert_allclose(rz(-np.pi / 4) @ rx(phi) @ rz(np.pi / 4), ry(phi), atol=1e-15)


@pytest.mark.parametrize("picture", ["analytic", "laurent"])
def test_gate_product_identity(rng, picture):
    for length in (1, 4, 16):
        F = random_sequence(rng, length, start=0)
        ph = phases_from_sequence(F)
        pair = forward_nlft(F)
        for z in np.exp(2j * np.pi * rng.random(6)):
            U = evaluate_protocol(ph, z, picture).matrix
            np.testing.assert_allclose(U, nlft_protocol_value(pair, length - 1, z, picture), atol=1e-12)


def test_laurent_point():
    F = NlftSequence(0, [0.2 + 0.1j, -0.4j, 0.3])
    z = np.exp(1j * np.pi / 5)
    U = evaluate_protocol(phases_from_sequence(F), z, "laurent").matrix
    expected = _dense_product(F, z * z) @ np.diag([z ** 2, z ** -2])
    np.testing.assert_allclose(U, expected, atol=1e-14)


def test_samples_are_su2(rng):
    F = random_sequence(rng, 10, start=0)
    ph = phases_from_sequence(F)
    for z in np.exp(2j * np.pi * rng.random(4)):
        for picture in ("analytic", "laurent"):
            s = evaluate_protocol(ph, z, picture)
            assert s.unitarity_defect() <= 1e-12
        assert Su2Sample.from_matrix(forward_nlft(F)(z)).determinant_defect() <= 1e-12


def test_rejects_point_off_circle():
    ph = GqspPhaseFactors(0.0, [0.1], [0.0])
    with pytest.raises(ValidationError):
        evaluate_protocol(ph, 1.01)
    with pytest.raises(ValidationError):
        evaluate_protocol(ph, 1.0, picture="chebyshev")


def test_pair_rejects_positive_a():
    with pytest.raises(ValidationError):
        NlftPair(LP(1, [1.0]), LP.zero())


def disk_sequence(rng, length, start=0):
    return NlftSequence(start, np.sqrt(rng.random(length)) * np.exp(2j * np.pi * rng.random(length)))


@pytest.mark.parametrize("length", [1, 2, 8, 16])
def test_layer_strip_round_trip(rng, length):
    F = disk_sequence(rng, length, start=int(rng.integers(-5, 5)))
    G = layer_strip(forward_nlft(F))
    assert G.support_start == F.support_start
    assert np.max(np.abs(G.values - F.values)) <= 1e-11


def test_forward_jacobian_matches_differences(rng):
    from qspkit.nlft import _pair_vector, forward_jacobian

    F = random_sequence(rng, 5, start=-2)
    J = forward_jacobian(F)
    h = 1e-6
    for col, d in enumerate([1, 1j] * 5):
        e = np.zeros(5, complex)
        e[col // 2] = d * h
        up = _pair_vector(forward_nlft(NlftSequence(-2, F.values + e)), F)
        dn = _pair_vector(forward_nlft(NlftSequence(-2, F.values - e)), F)
        np.testing.assert_allclose((up - dn) / (2 * h), J[:, col], atol=1e-8)


def test_refinement_recovers_long_sequences(rng):
    from qspkit.nlft import _pair_vector

    def residual(G, pair):
        return np.linalg.norm(_pair_vector(forward_nlft(G), G) - _pair_vector(pair, G))

    plain, refined = [], []
    for _ in range(10):
        F = disk_sequence(rng, 32)
        pair = forward_nlft(F)
        G0, G1 = layer_strip(pair), layer_strip(pair, refine=3)
        # Gauss-Newton never accepts a step that raises the residual
        assert residual(G1, pair) <= residual(G0, pair)
        plain.append(np.max(np.abs(G0.values - F.values)))
        refined.append(np.max(np.abs(G1.values - F.values)))
    assert max(refined) <= max(plain)
    assert np.median(refined) <= 1e-11


def test_layer_strip_rejects_non_nlft_pair():
    pair = forward_nlft(NlftSequence(0, [0.3, 0.5j, -0.2]))
    bad = NlftPair(pair.a, pair.b + LP.monomial(1, 0.1))
    with pytest.raises(Degenerate):
        layer_strip(bad)
    with pytest.raises(Degenerate):
        layer_strip(NlftPair(-pair.a, pair.b))


def test_length_one_properties_any_start(rng):
    for start in (-4, 0, 5):
        assert check_properties(NlftSequence(start, [0.3 - 0.4j]), rng).max() <= 1e-15
