"""Inverse NLFT by solving one Toeplitz block system per index (reference path).

For slice ``k`` with ``m = n - k + 1`` the unknowns are
``(b_k, rev(a_k))`` and the system is

    [[ I,    -T_k^T ],   [ b_k     ]   [ 0        ]
     [ T_k*,  I     ]] @ [ rev(a_k)] = [ rev(e_0) ]

with ``T_k`` the lower-triangular Toeplitz matrix whose first column is
``(c_n, ..., c_k)`` and ``T_k*`` its entrywise conjugate. Then
``F_k = b_{k,0} / a_{k,0}``. Cost is O(n^4) overall; use
:mod:`qspkit.half_cholesky` unless you need the independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystem, ValidationError

COND_LIMIT = 1e15


@dataclass(frozen=True, eq=False)
class NlftSequence:
    """Finite sequence ``values[j] = F_{support_start + j}``."""

    support_start: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise ValidationError("NLFT sequence values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "support_start", int(self.support_start))

    def __len__(self):
        return len(self.values)

    @property
    def support_end(self) -> int:
        return self.support_start + len(self.values) - 1

    def shifted(self, k: int) -> "NlftSequence":
        return NlftSequence(self.support_start + k, self.values)

    def __getitem__(self, k: int) -> complex:
        j = k - self.support_start
        if 0 <= j < len(self.values):
            return complex(self.values[j])
        return 0j


@dataclass(frozen=True, eq=False)
class ToeplitzBlock:
    k: int
    first_column: np.ndarray

    def matrix(self) -> np.ndarray:
        col = np.asarray(self.first_column, dtype=np.complex128)
        return scipy.linalg.toeplitz(col, np.zeros_like(col))


def toeplitz_block(c_hat, k: int) -> ToeplitzBlock:
    c_hat = np.asarray(c_hat, dtype=np.complex128)
    n = len(c_hat) - 1
    if not 0 <= k <= n:
        raise ValidationError(f"slice index {k} outside 0..{n}")
    return ToeplitzBlock(k, c_hat[k:][::-1].copy())


def build_system(c_hat, k: int):
    """Dense ``2m x 2m`` matrix and right-hand side for slice ``k``."""
    T = toeplitz_block(c_hat, k).matrix()
    m = T.shape[0]
    eye = np.eye(m, dtype=np.complex128)
    A = np.block([[eye, -T.T], [T.conj(), eye]])
    rhs = np.zeros(2 * m, dtype=np.complex128)
    rhs[-1] = 1.0
    return A, rhs


def solve_slice(c_hat, k: int):
    """Return ``(b_{k,0}, a_{k,0})`` for slice ``k``."""
    A, rhs = build_system(c_hat, k)
    lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    d = np.abs(np.diag(lu))
    if d.min() == 0 or d.max() / d.min() > COND_LIMIT:
        raise SingularSystem(f"slice {k}: pivot ratio {d.max() / max(d.min(), 1e-300):.3e}")
    x = scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)
    return x[0], x[-1]


def inverse_nlft_direct(c_hat) -> NlftSequence:
    """Recover ``F_0..F_n`` from ``c_hat = (c_0, ..., c_n)`` slice by slice."""
    c_hat = np.asarray(c_hat, dtype=np.complex128)
    if c_hat.ndim != 1 or c_hat.size == 0:
        raise ValidationError("c_hat must be a non-empty vector")
    F = np.empty(len(c_hat), dtype=np.complex128)
    for k in range(len(c_hat)):
        b0, a0 = solve_slice(c_hat, k)
        F[k] = b0 / a0
    return NlftSequence(0, F)
