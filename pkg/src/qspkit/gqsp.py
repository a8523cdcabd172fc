"""GQSP phase factors and their correspondence with NLFT sequences.

A protocol is

    e^{i lam Z} e^{i phi_0 X} e^{i theta_0 Z} W e^{i phi_1 X} e^{i theta_1 Z} W ... e^{i phi_n X} e^{i theta_n Z}

with ``W = diag(z, 1)`` (analytic picture) or ``diag(z, 1/z)`` (Laurent
picture). Each NLFT factor ``A_k = (1+|F_k|^2)^(-1/2) [[1, F_k], [-F_k*, 1]]``
is written ``e^{i psi_k Z} e^{i phi_k X} e^{-i psi_k Z}``, i.e.
``F_k = i tan(phi_k) e^{2 i psi_k}``; the ``Z`` rotations then telescope into
``lam = psi_0``, ``theta_k = psi_{k+1} - psi_k`` and ``theta_n = -psi_n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import NonRealTangent, NotCanonical, ValidationError
from .poly import LaurentPolynomial
from .riemann_hilbert import NlftSequence

REALNESS_TOL = 1e-12
TANGENT_TOL = 1e-10
CANONICAL_TOL = 1e-10


def wrap(x, lo: float, period: float):
    """Map ``x`` into ``[lo, lo + period)``."""
    return lo + np.mod(np.asarray(x, dtype=float) - lo, period)


@dataclass(frozen=True, eq=False)
class GqspPhaseFactors:
    lam: float
    phi: np.ndarray
    theta: np.ndarray
    canonical: bool = True

    def __post_init__(self):
        phi = np.array(self.phi, dtype=float, copy=True).reshape(-1)
        theta = np.array(self.theta, dtype=float, copy=True).reshape(-1)
        if phi.shape != theta.shape or phi.size == 0:
            raise ValidationError("phi and theta must be non-empty and of equal length")
        phi.setflags(write=False)
        theta.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n(self) -> int:
        return len(self.phi) - 1

    def canonical_defect(self) -> float:
        """``|lam + sum(theta)|`` reduced modulo ``2 pi``."""
        total = self.lam + float(np.sum(self.theta))
        return float(abs(wrap(total, -np.pi, 2 * np.pi)))


@dataclass(frozen=True, eq=False)
class PhasePrefactors:
    psi: np.ndarray


class Subalgebra(enum.Enum):
    X_CONSTRAINED = "XConstrained"
    Y_CONSTRAINED = "YConstrained"
    GENERAL = "General"


def _is_real(f: complex, tol: float) -> bool:
    return abs(f.imag) <= tol * max(1.0, abs(f))


def prefactors(F: NlftSequence, realness_tol: float = REALNESS_TOL) -> PhasePrefactors:
    """``psi_k = -arctan(Re F_k / Im F_k) / 2``, ``-pi/4`` for real ``F_k != 0``, 0 for ``F_k = 0``."""
    psi = np.zeros(len(F))
    for k, f in enumerate(F.values):
        if f == 0:
            psi[k] = 0.0
        elif _is_real(f, realness_tol):
            psi[k] = -np.pi / 4
        else:
            psi[k] = -0.5 * np.arctan(f.real / f.imag)
    return PhasePrefactors(psi)


def phases_from_sequence(F: NlftSequence, realness_tol: float = REALNESS_TOL) -> GqspPhaseFactors:
    """Canonical GQSP phase factors of a sequence supported from index 0.

    Raises
    ------
    NonRealTangent
        If ``-i e^{-2 i psi_k} F_k`` has a relative imaginary part above 1e-10.
    """
    if F.support_start != 0:
        raise ValidationError("shift the sequence to start at index 0 first")
    psi = prefactors(F, realness_tol).psi
    t = -1j * np.exp(-2j * psi) * F.values
    bad = np.abs(t.imag) > TANGENT_TOL * (1 + np.abs(t))
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise NonRealTangent(f"tan(phi_{k}) = {t[k]!r} is not real")
    phi = np.arctan(t.real)
    theta = np.empty_like(psi)
    theta[:-1] = np.diff(psi)
    theta[-1] = -psi[-1]
    return GqspPhaseFactors(lam=psi[0], phi=phi, theta=theta, canonical=True)


def sequence_from_phases(ph: GqspPhaseFactors) -> NlftSequence:
    """Inverse of :func:`phases_from_sequence` on canonical phase factors."""
    if ph.canonical_defect() > CANONICAL_TOL:
        raise NotCanonical(f"lambda + sum(theta) = {ph.lam + ph.theta.sum():.3e}; canonicalize first")
    psi = ph.lam + np.concatenate([[0.0], np.cumsum(ph.theta[:-1])])
    return NlftSequence(0, 1j * np.tan(ph.phi) * np.exp(2j * psi))


def canonicalize(ph: GqspPhaseFactors):
    """Fold ``beta = lam + sum(theta)`` out of ``theta_n``.

    The protocol changes by a trailing ``e^{i beta Z}``, which on ``|0>`` is
    the global phase ``e^{i beta}``; returns ``(canonical_ph, beta)``.
    """
    beta = float(wrap(ph.lam + ph.theta.sum(), -np.pi, 2 * np.pi))
    theta = ph.theta.copy()
    theta[-1] = wrap(theta[-1] - beta, -np.pi, 2 * np.pi)
    return GqspPhaseFactors(ph.lam, ph.phi, theta, canonical=True), beta


def processing_operators(ph: GqspPhaseFactors) -> list[np.ndarray]:
    """The NLFT factors ``A_k = e^{i psi_k Z} e^{i phi_k X} e^{-i psi_k Z}`` of a canonical protocol."""
    from .nlft import rx, rz

    psi = ph.lam + np.concatenate([[0.0], np.cumsum(ph.theta[:-1])])
    return [rz(p) @ rx(f) @ rz(-p) for p, f in zip(psi, ph.phi)]


def normalize_leading_phase(P: LaurentPolynomial, Q: LaurentPolynomial | None = None):
    """Rotate ``P`` so its leading coefficient is real positive.

    Returns ``(P * e^{-2 i alpha}, alpha)``; fold ``alpha`` into the protocol
    with ``lam -= alpha`` and ``theta_n -= alpha``. ``Q`` is unaffected.
    """
    nz = np.flatnonzero(P.coeffs != 0)
    if nz.size == 0:
        raise ValidationError("P must be nonzero")
    lead = P.coeffs[nz[-1]]
    alpha = float(np.angle(lead)) / 2
    return P * np.exp(-2j * alpha), alpha


def switch_polynomials(ph: GqspPhaseFactors) -> GqspPhaseFactors:
    """Absorb a trailing ``iX`` into the last processing operator.

    ``e^{i phi X} e^{i theta Z} iX = e^{i (phi + pi/2) X} e^{-i theta Z}``, so
    a protocol producing ``(Q, P)`` now produces ``(iP, iQ)``. When
    ``phi + pi/2`` leaves ``[-pi/2, pi/2)`` it is shifted by ``-pi``; the
    resulting sign is cancelled by adding ``pi`` to ``theta_n``.
    """
    phi = ph.phi.copy()
    theta = ph.theta.copy()
    new_phi = phi[-1] + np.pi / 2
    new_theta = -theta[-1]
    if new_phi >= np.pi / 2:
        new_phi -= np.pi
        new_theta += np.pi
    phi[-1] = new_phi
    theta[-1] = wrap(new_theta, -np.pi, 2 * np.pi)
    out = GqspPhaseFactors(ph.lam, phi, theta, canonical=False)
    return replace(out, canonical=out.canonical_defect() <= CANONICAL_TOL)


def z_rotations_trivial(ph: GqspPhaseFactors, tol: float = 1e-12) -> bool:
    """True when ``lam`` and every ``theta_k`` is a multiple of ``pi`` (each Z rotation is ``+-I``)."""
    angles = np.concatenate([[ph.lam], ph.theta])
    return bool(np.all(np.abs(wrap(angles, -np.pi / 2, np.pi)) <= tol))


def detect_subalgebra(F: NlftSequence, tol: float = 1e-12) -> Subalgebra:
    vals = F.values
    if vals.size == 0:
        return Subalgebra.X_CONSTRAINED
    scale = tol * max(1.0, float(np.max(np.abs(vals))))
    if np.max(np.abs(vals.real)) <= scale:
        return Subalgebra.X_CONSTRAINED
    if np.max(np.abs(vals.imag)) <= scale:
        return Subalgebra.Y_CONSTRAINED
    return Subalgebra.GENERAL


def analytic_to_laurent(P: LaurentPolynomial, Q: LaurentPolynomial, n: int | None = None):
    """``(z^-n P(z^2), z^-n Q(z^2))``: exponent ``k`` goes to ``2k - n``."""
    if n is None:
        n = max(P.support_end, Q.support_end)
    if min(P.support_start, Q.support_start) < 0 or max(P.support_end, Q.support_end) > n:
        raise ValidationError(f"P and Q must be supported on [0, {n}]")
    return tuple(_spread(p, n) for p in (P, Q))


def _spread(p: LaurentPolynomial, n: int) -> LaurentPolynomial:
    coeffs = np.zeros(2 * len(p) - 1, dtype=np.complex128)
    coeffs[::2] = p.coeffs
    return LaurentPolynomial(2 * p.support_start - n, coeffs)


def laurent_to_analytic(P: LaurentPolynomial, Q: LaurentPolynomial, n: int):
    """Inverse exponent map ``k -> (k + n) / 2`` for definite-parity inputs."""
    out = []
    for p in (P, Q):
        start = p.support_start + n
        if start % 2:
            raise ValidationError("support does not have the parity of n")
        if np.any(p.coeffs[1::2] != 0):
            raise ValidationError("polynomial does not have definite parity")
        out.append(LaurentPolynomial(start // 2, p.coeffs[::2]))
    return tuple(out)


def chebyshev_target_to_laurent(p_cheb) -> LaurentPolynomial:
    """``sum_k p_k T_k(x)`` with ``x = (z + 1/z)/2``, as a Laurent polynomial in ``z``."""
    p = np.asarray(p_cheb, dtype=float).reshape(-1)
    if p.size == 0:
        return LaurentPolynomial.zero()
    d = len(p) - 1
    coeffs = np.zeros(2 * d + 1, dtype=np.complex128)
    coeffs[d] = p[0]
    coeffs[d + 1:] += p[1:] / 2
    coeffs[:d] += p[1:][::-1] / 2
    return LaurentPolynomial(-d, coeffs)
