"""Outer complementary polynomial and the Fourier coefficients of ``b/a``.

Given ``b(z) = sum_{k=0}^n b_k z^k`` with ``|b| <= 1 - eta`` on the circle,
the outer completion is ``a = exp(G*)`` where ``G`` is the Schwarz integral of
``R = log sqrt(1 - |b|^2)``. Everything is computed by FFT on one grid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergent, SupNormTooLarge, ValidationError
from .poly import (LaurentPolynomial, UnitCircleGrid, coeffs_from_grid, eval_on_grid,
                   next_power_of_two, sup_norm)

log = logging.getLogger(__name__)

MIN_GRID = 8
MAX_GRID = 2 ** 26
ETA_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class CompletionResult:
    a: LaurentPolynomial
    c_hat: np.ndarray
    grid_size: int
    eta_used: float
    residual: float

    @property
    def degree(self) -> int:
        return len(self.c_hat) - 1


def choose_grid_size(n: int, eta: float, eps: float) -> int:
    """Smallest power of two ``N >= 8n/eta * log(576 n^2 / (eta^4 eps))``, at least 8."""
    if n < 0:
        raise ValidationError("degree must be non-negative")
    if not 0 < eta < 1:
        raise ValidationError(f"eta must lie in (0, 1), got {eta}")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    if n == 0:
        return MIN_GRID
    bound = 8 * n / eta * math.log(576 * n ** 2 / (eta ** 4 * eps))
    return max(MIN_GRID, next_power_of_two(bound))


def schwarz_transform(r_hat, N: int) -> np.ndarray:
    """Coefficients of ``G*`` from those of ``R``.

    ``r_hat[i]`` holds the coefficient of ``z**(i - N//2)``. The result uses the
    same indexing: exponent 0 keeps ``r_0``, exponents ``-1 .. -N/2`` get
    ``2 r_{-k}``, positive exponents vanish.
    """
    r_hat = np.asarray(r_hat, dtype=np.complex128)
    if r_hat.shape != (N,):
        raise ValidationError(f"expected {N} coefficients, got {r_hat.shape}")
    half = N // 2
    out = np.zeros(N, dtype=np.complex128)
    out[:half] = 2 * r_hat[:half]
    out[half] = r_hat[half]
    return out


def _log_outer_modulus(b_vals: np.ndarray) -> np.ndarray:
    # log sqrt(1 - |b|^2), stable as |b| -> 1
    return 0.5 * np.log1p(-np.abs(b_vals) ** 2)


def _weiss_on_grid(b: LaurentPolynomial, n: int, N: int):
    b_vals = np.array(eval_on_grid(b, N).samples)
    R = UnitCircleGrid(N, _log_outer_modulus(b_vals))
    r_hat = coeffs_from_grid(R, -(N // 2), N).coeffs
    g_star = LaurentPolynomial(-(N // 2), schwarz_transform(r_hat, N))
    g_vals = np.array(eval_on_grid(g_star, N).samples)

    a = coeffs_from_grid(UnitCircleGrid(N, np.exp(g_vals)), -n, n + 1)
    a0 = a.coeffs[-1]
    phase = np.conj(a0) / abs(a0)
    coeffs = a.coeffs * phase
    coeffs[-1] = abs(a0)
    a = LaurentPolynomial(-n, coeffs)
    # a is rescaled by `phase`, so b/a picks up conj(phase)
    c = coeffs_from_grid(UnitCircleGrid(N, b_vals * np.exp(-g_vals) * np.conj(phase)), 0, n + 1)
    return a, c.coeffs, float(abs(a0.imag) / abs(a0))


def completion_residual(a: LaurentPolynomial, b: LaurentPolynomial, oversample: int = 4) -> float:
    """``max | |a|^2 + |b|^2 - 1 |`` over an oversampled grid."""
    span = max(b.support_end, 0) - min(a.support_start, 0)
    N = next_power_of_two(oversample * (span + 1))
    N = max(N, MIN_GRID)
    defect = (np.abs(eval_on_grid(a, N).samples) ** 2
              + np.abs(eval_on_grid(b, N).samples) ** 2 - 1.0)
    return float(np.max(np.abs(defect)))


def complete(b: LaurentPolynomial, eps: float = 1e-14, eta: float | None = None) -> CompletionResult:
    """Outer completion of ``b``.

    Parameters
    ----------
    b : LaurentPolynomial
        Target supported on ``[0, n]``.
    eps : float
        Target precision; drives the grid size and the residual checks.
    eta : float, optional
        Margin with ``|b| <= 1 - eta``; estimated from a 16x oversampled grid
        when omitted.

    Returns
    -------
    CompletionResult
        ``a`` on exponents ``[-n, 0]`` with positive constant term, and
        ``c_hat = (c_0, ..., c_n)``, the non-negative Fourier window of ``b/a``.

    Raises
    ------
    SupNormTooLarge
        If the estimated sup-norm of ``b`` exceeds ``1 - 1e-8``.
    NonConvergent
        If the residual stays above ``100 * eps`` after grid refinement.
    """
    if b.support_start < 0:
        raise ValidationError("b must be supported on non-negative exponents")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    n = max(b.support_end, 0)

    norm = sup_norm(b, oversample=16)
    if norm > 1 - ETA_FLOOR:
        raise SupNormTooLarge(f"sup-norm of b is {norm:.17g}, need <= 1 - {ETA_FLOOR:g}")
    if eta is None:
        eta = min(max(1.0 - norm, ETA_FLOOR), 1.0 - ETA_FLOOR)
    elif not 0 < eta < 1:
        raise ValidationError(f"eta must lie in (0, 1), got {eta}")
    elif norm > 1 - eta + 1e-12:
        log.warning("supplied eta=%g but estimated sup-norm of b is %.6g", eta, norm)

    # a grid that cannot hold the products would alias them
    N = max(choose_grid_size(n, eta, eps), next_power_of_two(4 * (n + 1)))
    prev = math.inf
    while True:
        a, c_hat, _ = _weiss_on_grid(b, n, N)
        residual = completion_residual(a, b)
        log.debug("weiss N=%d residual=%.3e", N, residual)
        if residual <= 10 * eps:
            break
        # stop once doubling no longer helps: beyond that we only hit roundoff
        if N >= MAX_GRID or residual > 0.5 * prev:
            break
        prev = residual
        N *= 2

    if residual > 100 * eps:
        raise NonConvergent(f"completion residual {residual:.3e} > {100 * eps:.1e} at N={N}")
    return CompletionResult(a=a, c_hat=np.asarray(c_hat), grid_size=N, eta_used=float(eta),
                            residual=residual)
