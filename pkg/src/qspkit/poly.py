"""Complex Laurent polynomials and their samples on the unit circle.

FFT convention used everywhere in the package: the forward map evaluates at
``exp(+2*pi*i*j/N)`` and the inverse map carries the ``1/N`` factor, so

    samples[j] = sum_k c_k exp(2*pi*i*j*k/N)
    c_k        = (1/N) sum_j samples[j] exp(-2*pi*i*j*k/N)

with exponent ``k`` stored in bin ``k mod N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ValidationError


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def next_power_of_two(x: float) -> int:
    """Smallest power of two ``>= x`` (and ``>= 1``)."""
    n = 1
    while n < x:
        n <<= 1
    return n


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """``sum_j coeffs[j] * z**(support_start + j)``.

    Coefficients are never pruned implicitly, including exact zeros at either
    end; call :meth:`trim` to drop them.
    """

    support_start: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if coeffs.size == 0:
            raise ValidationError("a Laurent polynomial needs at least one coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise ValidationError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "support_start", int(self.support_start))

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls(0, [0.0])

    @classmethod
    def constant(cls, c: complex) -> "LaurentPolynomial":
        return cls(0, [c])

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPolynomial":
        return cls(k, [c])

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPolynomial":
        """Build from ``{exponent: coefficient}``."""
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        coeffs = np.zeros(hi - lo + 1, dtype=np.complex128)
        for k, c in terms.items():
            coeffs[k - lo] += c
        return cls(lo, coeffs)

    # shape --------------------------------------------------------------

    @property
    def support_end(self) -> int:
        """Highest stored exponent."""
        return self.support_start + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """Distance between the highest and lowest stored exponents."""
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficient(self, k: int) -> complex:
        j = k - self.support_start
        if 0 <= j < len(self.coeffs):
            return complex(self.coeffs[j])
        return 0j

    def window(self, start: int, stop: int) -> np.ndarray:
        """Coefficients of exponents ``start, ..., stop - 1`` (zero outside the support)."""
        out = np.zeros(stop - start, dtype=np.complex128)
        lo = max(start, self.support_start)
        hi = min(stop, self.support_end + 1)
        if lo < hi:
            out[lo - start:hi - start] = self.coeffs[lo - self.support_start:hi - self.support_start]
        return out

    def trim(self, tol: float = 0.0) -> "LaurentPolynomial":
        """Drop leading/trailing coefficients with modulus ``<= tol``."""
        nz = np.flatnonzero(np.abs(self.coeffs) > tol)
        if nz.size == 0:
            return LaurentPolynomial.zero()
        return LaurentPolynomial(self.support_start + nz[0], self.coeffs[nz[0]:nz[-1] + 1])

    # algebra ------------------------------------------------------------

    def _aligned(self, other: "LaurentPolynomial"):
        lo = min(self.support_start, other.support_start)
        hi = max(self.support_end, other.support_end)
        return lo, self.window(lo, hi + 1), other.window(lo, hi + 1)

    def __add__(self, other):
        if isinstance(other, Number):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        lo, x, y = self._aligned(other)
        return LaurentPolynomial(lo, x + y)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.support_start, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return LaurentPolynomial(self.support_start, self.coeffs * other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return LaurentPolynomial(self.support_start + other.support_start,
                                 np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return LaurentPolynomial(self.support_start, self.coeffs / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (self.support_start == other.support_start
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``z**k``."""
        return LaurentPolynomial(self.support_start + k, self.coeffs)

    def star(self) -> "LaurentPolynomial":
        """``p*(z) = conj(p(1/conj(z)))``: coefficient of ``z**k`` is ``conj(p_{-k})``."""
        return LaurentPolynomial(-self.support_end, np.conj(self.coeffs[::-1]))

    def conj_coeffs(self) -> "LaurentPolynomial":
        """Entrywise conjugated coefficients, i.e. ``p*(1/z)``."""
        return LaurentPolynomial(self.support_start, np.conj(self.coeffs))

    def reflect(self) -> "LaurentPolynomial":
        """``p(1/z)``."""
        return LaurentPolynomial(-self.support_end, self.coeffs[::-1])

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return np.polyval(self.coeffs[::-1], z) * z ** self.support_start

    def max_abs_diff(self, other: "LaurentPolynomial") -> float:
        """Largest coefficientwise deviation, with supports aligned."""
        _, x, y = self._aligned(other)
        return float(np.max(np.abs(x - y)))

    def l2_coeff_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __repr__(self):
        return f"LaurentPolynomial(support_start={self.support_start}, coeffs={self.coeffs!r})"


@dataclass(frozen=True, eq=False)
class UnitCircleGrid:
    """Values at ``z_j = exp(2*pi*i*j/N)``, ``j = 0..N-1``."""

    N: int
    samples: np.ndarray

    def __post_init__(self):
        if not is_power_of_two(self.N):
            raise ValidationError(f"grid size must be a power of two, got {self.N}")
        samples = _frozen(self.samples)
        if samples.size != self.N:
            raise ValidationError(f"expected {self.N} samples, got {samples.size}")
        object.__setattr__(self, "samples", samples)

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.N) / self.N)


def eval_on_grid(p: LaurentPolynomial, N: int) -> UnitCircleGrid:
    """Sample ``p`` at the ``N``-th roots of unity with one FFT."""
    if not is_power_of_two(N):
        raise ValidationError(f"grid size must be a power of two, got {N}")
    if N <= p.span:
        raise ValidationError(f"grid size {N} must exceed the degree span {p.span}")
    placed = np.zeros(N, dtype=np.complex128)
    idx = np.arange(p.support_start, p.support_end + 1) % N
    placed[idx] = p.coeffs
    return UnitCircleGrid(N, np.fft.ifft(placed, norm="forward"))


def coeffs_from_grid(g: UnitCircleGrid, support_start: int, length: int) -> LaurentPolynomial:
    """Read the Fourier coefficients of ``g`` back onto exponents
    ``support_start, ..., support_start + length - 1`` (frequencies mod ``N``)."""
    if length < 1 or length > g.N:
        raise ValidationError(f"window of length {length} does not fit a grid of size {g.N}")
    spectrum = np.fft.fft(g.samples, norm="forward")
    idx = np.arange(support_start, support_start + length) % g.N
    return LaurentPolynomial(support_start, spectrum[idx])


def grid_values(p: LaurentPolynomial, N: int) -> np.ndarray:
    """Shorthand for ``eval_on_grid(p, N).samples`` as a writable array."""
    return np.array(eval_on_grid(p, N).samples)


def sup_norm(p: LaurentPolynomial, oversample: int = 16, refine: int = 8) -> float:
    """Estimate ``max |p(z)|`` over the unit circle.

    The polynomial is sampled on the smallest power-of-two grid with at least
    ``oversample * (span + 1)`` points; the ``refine`` best local maxima of the
    grid are then polished by a bounded scalar search between their
    neighbours. Every value returned is attained by ``|p|`` somewhere on the
    circle, so the estimate is a lower bound on the true sup-norm.
    """
    if oversample < 4:
        raise ValidationError("oversample must be at least 4")
    N = next_power_of_two(oversample * (p.span + 1))
    vals = np.abs(eval_on_grid(p, N).samples)
    best = float(vals.max())
    if refine <= 0 or p.span == 0:
        return best

    h = 2 * np.pi / N
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    peaks = np.flatnonzero(is_peak)
    peaks = peaks[np.argsort(vals[peaks])[::-1][:refine]]
    abs_neg = lambda t: -float(np.abs(p(np.exp(1j * t))))
    for j in peaks:
        t0 = j * h
        res = minimize_scalar(abs_neg, bounds=(t0 - h, t0 + h), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return best
