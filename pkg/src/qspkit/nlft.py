"""Forward nonlinear Fourier transform on SU(2) and related checks.

A sequence ``F`` supported on ``[s, t]`` maps to the ordered product

    prod_k (1 + |F_k|^2)^(-1/2) [[1, F_k z^k], [-conj(F_k) z^-k, 1]]

whose first row ``(a, b)`` is returned as a pair of Laurent polynomials,
``a`` on ``[s - t, 0]`` and ``b`` on ``[s, t]``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import Degenerate, ValidationError
from .gqsp import GqspPhaseFactors
from .poly import LaurentPolynomial
from .riemann_hilbert import NlftSequence

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class Su2Sample:
    a11: complex
    a12: complex
    a21: complex
    a22: complex

    @classmethod
    def from_matrix(cls, m) -> "Su2Sample":
        m = np.asarray(m, dtype=np.complex128)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=np.complex128)

    def unitarity_defect(self) -> float:
        m = self.matrix
        return float(np.linalg.norm(m.conj().T @ m - np.eye(2), 2))

    def determinant_defect(self) -> float:
        return float(abs(np.linalg.det(self.matrix) - 1))


@dataclass(frozen=True, eq=False)
class NlftPair:
    """First row ``(a, b)`` of an SU(2)-valued Laurent polynomial."""

    a: LaurentPolynomial
    b: LaurentPolynomial

    def __post_init__(self):
        if self.a.support_end > 0:
            raise ValidationError("a must be supported on non-positive exponents")

    def __call__(self, z) -> np.ndarray:
        """``[[a, b], [-conj(b), conj(a)]]`` at a point of the circle."""
        av, bv = complex(self.a(z)), complex(self.b(z))
        return np.array([[av, bv], [-np.conj(bv), np.conj(av)]])

    def __matmul__(self, other: "NlftPair") -> "NlftPair":
        # (a1, b1)(a2, b2) = (a1 a2 - b1 b2*, a1 b2 + b1 a2*)
        a = self.a * other.a - self.b * other.b.star()
        b = self.a * other.b + self.b * other.a.star()
        # a zero b placed at a positive exponent leaves exact zeros above z^0
        if a.support_end > 0 and not np.any(a.window(1, a.support_end + 1)):
            a = LaurentPolynomial(a.support_start, a.window(a.support_start, 1))
        return NlftPair(a, b)

    def max_abs_diff(self, other: "NlftPair") -> float:
        return max(self.a.max_abs_diff(other.a), self.b.max_abs_diff(other.b))


def forward_nlft(F: NlftSequence) -> NlftPair:
    """Multiply the factors of ``F`` in increasing index order, exactly."""
    vals = F.values
    L = len(vals)
    if L == 0:
        return NlftPair(LaurentPolynomial.constant(1.0), LaurentPolynomial.zero())
    # a[i] is the coefficient of z^-i, b[j] that of z^(s+j)
    a = np.zeros(L + 1, dtype=np.complex128)
    b = np.zeros(L + 1, dtype=np.complex128)
    a[0] = 1.0
    for t, f in enumerate(vals):
        s = np.sqrt(1 + abs(f) ** 2)
        ar = a[t::-1].copy()
        br = b[t::-1].copy()
        b[:t + 1] = (b[:t + 1] + f * ar) / s
        a[:t + 1] = (a[:t + 1] - np.conj(f) * br) / s
    return NlftPair(LaurentPolynomial(-(L - 1), a[:L][::-1]),
                    LaurentPolynomial(F.support_start, b[:L]))


def layer_strip(pair: NlftPair, tol: float = 1e-6, refine: int = 0) -> NlftSequence:
    """Peel one factor at a time off ``(a, b)``.

    At each step ``F_s = b_s / a_0`` where ``s`` is the lowest exponent of
    ``b``. Left-multiplying by the inverse factor yields
    ``a' = (a + F z^s b*) / sigma`` and ``b' = (b - F z^s a*) / sigma``; the
    lowest coefficient of ``b'`` and the most negative of ``a'`` must cancel
    and are dropped. ``Degenerate`` is raised if either exceeds ``tol`` in
    modulus, or if ``a_0`` stops being positive.

    Peeling amplifies rounding in the input, badly so when ``a`` is far
    from outer. ``refine > 0`` runs up to that many Gauss-Newton steps on
    ``forward_nlft(F) = (a, b)`` afterwards; each costs ``O(L^3)``.
    """
    a, b = pair.a, pair.b
    s = b.support_start
    L = b.support_end - s + 1
    # align: ar[i] = coefficient of z^-i, br[j] = coefficient of z^(s+j)
    ar = a.window(-(L - 1), 1)[::-1].copy()
    br = b.coeffs.copy()
    if a.support_start < -(L - 1) and np.any(np.abs(a.window(a.support_start, -(L - 1))) > tol):
        raise Degenerate("a has more coefficients than b allows")
    F = np.empty(L, dtype=np.complex128)
    for t in range(L):
        a0 = ar[0]
        if not np.isfinite(a0) or a0.real <= 0 or abs(a0.imag) > tol * max(1.0, abs(a0)):
            raise Degenerate(f"step {t}: a_0 = {a0!r} is not positive")
        f = br[0] / a0.real
        F[t] = f
        sig = np.sqrt(1 + abs(f) ** 2)
        ar, br = (ar + f * np.conj(br)) / sig, (br - f * np.conj(ar)) / sig
        last = len(ar) == 1
        drop = abs(br[0]) if last else max(abs(br[0]), abs(ar[-1]))
        if not np.isfinite(drop) or drop > tol:
            raise Degenerate(f"step {t}: stripped coefficient of modulus {drop:.3e}")
        ar, br = (ar, br[1:]) if last else (ar[:-1], br[1:])
    # what remains is the empty product (1, 0)
    if abs(ar[0] - 1) > tol:
        raise Degenerate(f"residual a_0 = {ar[0]!r} after stripping, expected 1")
    out = NlftSequence(s, F)
    return refine_sequence(pair, out, refine) if refine > 0 else out


def _pair_vector(pair: NlftPair, F: NlftSequence) -> np.ndarray:
    L = len(F)
    x = np.concatenate([pair.a.window(-(L - 1), 1), pair.b.window(F.support_start, F.support_end + 1)])
    return np.concatenate([x.real, x.imag])


def forward_jacobian(F: NlftSequence) -> np.ndarray:
    """Real Jacobian of ``F -> (a, b)``.

    Rows are the real then imaginary parts of the coefficients of ``a`` on
    ``[-(L-1), 0]`` followed by ``b`` on the support of ``F``; columns are
    ``(Re F_0, Im F_0, Re F_1, ...)``.
    """
    vals, s0 = F.values, F.support_start
    L = len(vals)
    one = LaurentPolynomial.constant(1.0)
    # prefix[k] is the first row of A_0 ... A_{k-1}, suffix[k] that of A_{k+1} ... A_{L-1};
    # the zero b's sit at exponents that keep every product's a non-positive
    prefix = [NlftPair(one, LaurentPolynomial.monomial(s0, 0.0))]
    for k in range(L - 1):
        prefix.append(prefix[-1] @ _factor(vals[k], s0 + k))
    suffix = [NlftPair(one, LaurentPolynomial.monomial(s0 + L - 1, 0.0))]
    for k in range(L - 1, 0, -1):
        suffix.append(_factor(vals[k], s0 + k) @ suffix[-1])
    suffix.reverse()

    cols = []
    for k, f in enumerate(vals):
        sig = np.sqrt(1 + abs(f) ** 2)
        s = 1 / sig
        p, q = prefix[k], suffix[k]
        for d in (1.0, 1j):
            ds = -(f.real if d == 1.0 else f.imag) * s ** 3
            m11 = LaurentPolynomial.constant(ds)
            m12 = LaurentPolynomial.monomial(s0 + k, ds * f + s * d)
            m21 = LaurentPolynomial.monomial(-(s0 + k), -ds * np.conj(f) - s * np.conj(d))
            r1 = p.a * m11 + p.b * m21
            r2 = p.a * m12 + p.b * m11
            da = r1 * q.a - r2 * q.b.star()
            db = r1 * q.b + r2 * q.a.star()
            cols.append(_pair_vector(NlftPair(da, db), F))
    return np.column_stack(cols)


def refine_sequence(pair: NlftPair, F: NlftSequence, iterations: int = 3) -> NlftSequence:
    """Gauss-Newton polish of ``F`` against ``forward_nlft(F) = pair``."""
    target = _pair_vector(pair, F)
    res = target - _pair_vector(forward_nlft(F), F)
    best = np.linalg.norm(res)
    for _ in range(iterations):
        step = np.linalg.lstsq(forward_jacobian(F), res, rcond=None)[0]
        G = NlftSequence(F.support_start, F.values + step[0::2] + 1j * step[1::2])
        new_res = target - _pair_vector(forward_nlft(G), G)
        if not np.linalg.norm(new_res) < best:
            break
        F, res, best = G, new_res, np.linalg.norm(new_res)
    return F


def _factor(f: complex, k: int) -> NlftPair:
    s = np.sqrt(1 + abs(f) ** 2)
    return NlftPair(LaurentPolynomial.constant(1 / s), LaurentPolynomial.monomial(k, f / s))


@dataclass(frozen=True)
class PropertyReport:
    """Largest coefficientwise deviation observed for each NLFT identity."""

    shift: float
    composition: float
    phase: float
    reflection: float
    conjugation: float

    def max(self) -> float:
        return max(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def check_properties(F: NlftSequence, rng=None, shift: int | None = None) -> PropertyReport:
    """Check shift, composition, phase, reflection and conjugation on ``F``."""
    rng = np.random.default_rng(rng)
    base = forward_nlft(F)
    a, b = base.a, base.b
    L = len(F)

    k = int(rng.integers(-5, 6)) if shift is None else shift
    g = forward_nlft(F.shifted(k))
    shift_dev = max(g.a.max_abs_diff(a), g.b.max_abs_diff(b.shift(k)))

    if L >= 2:
        cut = int(rng.integers(1, L))
        left = NlftSequence(F.support_start, F.values[:cut])
        right = NlftSequence(F.support_start + cut, F.values[cut:])
        comp_dev = base.max_abs_diff(forward_nlft(left) @ forward_nlft(right))
    else:
        comp_dev = base.max_abs_diff(forward_nlft(F) @ forward_nlft(NlftSequence(0, [])))

    c = np.exp(2j * np.pi * rng.random())
    g = forward_nlft(NlftSequence(F.support_start, c * F.values))
    phase_dev = max(g.a.max_abs_diff(a), g.b.max_abs_diff(b * c))

    g = forward_nlft(NlftSequence(-F.support_end, F.values[::-1]))
    refl_dev = max(g.a.max_abs_diff(a.conj_coeffs()), g.b.max_abs_diff(b.reflect()))

    g = forward_nlft(NlftSequence(F.support_start, np.conj(F.values)))
    conj_dev = max(g.a.max_abs_diff(a.conj_coeffs()), g.b.max_abs_diff(b.conj_coeffs()))

    return PropertyReport(shift_dev, comp_dev, phase_dev, refl_dev, conj_dev)


def rx(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, 1j * s], [1j * s, c]])


def ry(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(1j * theta), np.exp(-1j * theta)])


def signal_operator(z: complex, picture: str = "analytic") -> np.ndarray:
    if picture == "analytic":
        return np.diag([z, 1.0 + 0j])
    if picture == "laurent":
        return np.diag([z, 1 / z])
    raise ValidationError(f"unknown picture {picture!r}")


def evaluate_protocol(phases: GqspPhaseFactors, z: complex, picture: str = "analytic") -> Su2Sample:
    """``e^{i lam Z} e^{i phi_0 X} e^{i theta_0 Z} W ... W e^{i phi_n X} e^{i theta_n Z}``."""
    z = complex(z)
    if abs(abs(z) - 1) > 1e-12:
        raise ValidationError(f"z = {z} is not on the unit circle")
    W = signal_operator(z, picture)
    U = rz(phases.lam)
    for k, (phi, theta) in enumerate(zip(phases.phi, phases.theta)):
        if k:
            U = U @ W
        U = U @ rx(phi) @ rz(theta)
    return Su2Sample.from_matrix(U)


def nlft_protocol_value(pair: NlftPair, n: int, z: complex, picture: str = "analytic") -> np.ndarray:
    """``G_F(z) w^n`` (analytic) or ``G_F(z^2) v^n`` (Laurent) for comparison with a protocol."""
    z = complex(z)
    if picture == "analytic":
        return pair(z) @ np.diag([z ** n, 1.0])
    if picture == "laurent":
        return pair(z * z) @ np.diag([z ** n, z ** -n])
    raise ValidationError(f"unknown picture {picture!r}")
