"""All Riemann-Hilbert slices at once via LDL^H of ``K = I + B B^H``.

``B`` is the lower-triangular Toeplitz matrix with first column
``p = (conj(c_n), ..., conj(c_0))``. ``K`` has displacement rank two,

    K - Z K Z^H = G G^H,   G = [e_0, p],

with ``Z`` the lower shift, so a generalized Schur recursion produces one
column of ``L`` per step in O(n) work. Both generator columns carry positive
signature, so every reduction is a plain unitary 2x2 rotation; no hyperbolic
rotations are involved. Then ``(conj(F_n), ..., conj(F_0)) = L^{-1} p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NonPositivePivot, ValidationError
from .riemann_hilbert import NlftSequence


@dataclass(frozen=True, eq=False)
class DisplacementGenerator:
    e0: np.ndarray
    p: np.ndarray

    @classmethod
    def from_c_hat(cls, c_hat) -> "DisplacementGenerator":
        c_hat = np.asarray(c_hat, dtype=np.complex128)
        if c_hat.ndim != 1 or c_hat.size == 0:
            raise ValidationError("c_hat must be a non-empty vector")
        e0 = np.zeros(len(c_hat), dtype=np.complex128)
        e0[0] = 1.0
        return cls(e0, np.conj(c_hat[::-1]))

    @property
    def size(self) -> int:
        return len(self.p)

    def dense(self) -> np.ndarray:
        """Explicit ``I + B B^H`` (test oracle only)."""
        B = scipy.linalg.toeplitz(self.p, np.zeros_like(self.p))
        return np.eye(self.size) + B @ B.conj().T


def _schur_steps(gen: DisplacementGenerator):
    """Yield ``(i, l, d)`` with ``l`` the tail ``L[i:, i]`` and ``d = D[i]``."""
    if not np.all(np.isfinite(gen.p)):
        raise ValidationError("generator must be finite")
    u = gen.e0.astype(np.complex128, copy=True)
    v = gen.p.astype(np.complex128, copy=True)
    for i in range(gen.size):
        g0, g1 = u[0], v[0]
        d = abs(g0) ** 2 + abs(g1) ** 2
        if not d > 0 or not np.isfinite(d):
            raise NonPositivePivot(f"pivot {i} is {d!r}")
        delta = np.sqrt(d)
        # unitary rotation taking the first generator row (g0, g1) to (delta, 0)
        u, v = (np.conj(g0) * u + np.conj(g1) * v) / delta, (g0 * v - g1 * u) / delta
        yield i, u / delta, d
        u, v = u[:-1], v[1:]


def schur_ldl(gen: DisplacementGenerator):
    """Return ``(L, D)`` with ``L`` unit lower triangular and ``L diag(D) L^H = I + B B^H``."""
    m = gen.size
    L = np.zeros((m, m), dtype=np.complex128)
    D = np.empty(m)
    for i, col, d in _schur_steps(gen):
        L[i:, i] = col
        D[i] = d
    return L, D


def inverse_nlft_fast(c_hat) -> NlftSequence:
    """O(n^2) inverse NLFT from ``c_hat = (c_0, ..., c_n)``.

    ``L`` is never stored: the forward substitution ``L x = p`` is fused into
    the recursion, consuming each column as soon as it is produced.
    """
    gen = DisplacementGenerator.from_c_hat(c_hat)
    w = gen.p.copy()
    for i, col, _ in _schur_steps(gen):
        w[i + 1:] -= col[1:] * w[i]
    return NlftSequence(0, np.conj(w[::-1]))
