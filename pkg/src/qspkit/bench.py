"""Random targets, error metrics and the accuracy/timing sweep."""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import QspkitError, ValidationError
from .half_cholesky import inverse_nlft_fast
from .nlft import NlftPair, forward_nlft, layer_strip
from .poly import LaurentPolynomial, eval_on_grid, next_power_of_two, sup_norm
from .riemann_hilbert import NlftSequence, inverse_nlft_direct
from .weiss import complete

RNG_ALGORITHM = "numpy.random.PCG64 seeded by numpy.random.SeedSequence([seed, degree, repeat])"
METHODS = ("direct", "half_cholesky", "layer_strip")
CSV_COLUMNS = ("degree", "method", "repeat", "wall_time_s", "completion_err", "forward_err", "status")


def normalize_method(name: str) -> str:
    m = name.strip().lower().replace("-", "_")
    if m not in METHODS:
        raise ValidationError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
    return m


def random_target(n: int, eta: float, seed) -> LaurentPolynomial:
    """Standard complex Gaussian coefficients rescaled to sup-norm ``1 - eta``.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts; the
    generator is PCG64.
    """
    if n < 0:
        raise ValidationError("degree must be non-negative")
    if not 0 < eta < 1:
        raise ValidationError(f"eta must lie in (0, 1), got {eta}")
    rng = np.random.default_rng(seed)
    c = (rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)) / math.sqrt(2)
    p = LaurentPolynomial(0, c)
    return p * ((1 - eta) / sup_norm(p, oversample=16))


def _grid_for(*polys, oversample: int = 4) -> int:
    lo = min(p.support_start for p in polys)
    hi = max(p.support_end for p in polys)
    return max(8, next_power_of_two(oversample * (hi - lo + 1)))


def _rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.abs(values) ** 2)))


def completion_error(a: LaurentPolynomial, b: LaurentPolynomial, grid_N: int | None = None) -> float:
    """``|| |a|^2 + |b|^2 - 1 ||_2`` as an RMS over a uniform grid."""
    N = grid_N or _grid_for(a, b)
    defect = np.abs(eval_on_grid(a, N).samples) ** 2 + np.abs(eval_on_grid(b, N).samples) ** 2 - 1
    return _rms(defect)


def forward_error(a: LaurentPolynomial, b: LaurentPolynomial, F: NlftSequence,
                  grid_N: int | None = None) -> float:
    """RMS distance between ``(a, b)`` and ``forward_nlft(F)``, both components summed."""
    rec = forward_nlft(F)
    da, db = a - rec.a, b - rec.b
    N = grid_N or _grid_for(da, db)
    return math.sqrt(_rms(eval_on_grid(da, N).samples) ** 2 + _rms(eval_on_grid(db, N).samples) ** 2)


@dataclass
class BenchConfig:
    degrees: list[int]
    eta: float = 0.5
    eps: float = 1e-14
    seed: int = 0
    methods: list[str] = field(default_factory=lambda: ["half_cholesky"])
    repeats: int = 1

    def __post_init__(self):
        self.degrees = [int(d) for d in self.degrees]
        if any(d <= 0 for d in self.degrees) or self.degrees != sorted(set(self.degrees)):
            raise ValidationError("degrees must be positive and strictly ascending")
        if not 0 < self.eta < 1:
            raise ValidationError(f"eta must lie in (0, 1), got {self.eta}")
        if self.repeats < 1:
            raise ValidationError("repeats must be at least 1")
        self.methods = [normalize_method(m) for m in self.methods]


@dataclass
class BenchRecord:
    degree: int
    method: str
    repeat: int
    wall_time_seconds: float
    completion_error: float
    forward_error: float
    status: str = "ok"

    def csv_row(self) -> list[str]:
        return [str(self.degree), self.method, str(self.repeat), repr(self.wall_time_seconds),
                repr(self.completion_error), repr(self.forward_error), self.status]


def invert(method: str, completion, b: LaurentPolynomial) -> NlftSequence:
    method = normalize_method(method)
    if method == "half_cholesky":
        return inverse_nlft_fast(completion.c_hat)
    if method == "direct":
        return inverse_nlft_direct(completion.c_hat)
    return layer_strip(NlftPair(completion.a, b))


def _run_one(cfg: BenchConfig, degree: int, method: str, repeat: int) -> BenchRecord:
    b = random_target(degree, cfg.eta, np.random.SeedSequence([cfg.seed, degree, repeat]))
    t0 = time.perf_counter()
    try:
        res = complete(b, eps=cfg.eps, eta=cfg.eta)
        F = invert(method, res, b)
    except QspkitError as exc:
        return BenchRecord(degree, method, repeat, time.perf_counter() - t0,
                           math.nan, math.nan, type(exc).__name__)
    elapsed = time.perf_counter() - t0
    return BenchRecord(degree, method, repeat, elapsed,
                       completion_error(res.a, b), forward_error(res.a, b, F))


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QSPKIT_THREADS", "1")))
    except ValueError:
        raise ValidationError("QSPKIT_THREADS must be an integer") from None


def run_bench(cfg: BenchConfig, workers: int | None = None) -> list[BenchRecord]:
    """One record per degree x method x repeat, ordered by that key.

    Every method sees the same target for a given ``(degree, repeat)``.
    """
    jobs = [(d, m, r) for d in cfg.degrees for m in cfg.methods for r in range(cfg.repeats)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(jobs) <= 1:
        return [_run_one(cfg, *job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _run_one(cfg, *job), jobs))


def write_csv(records, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow(rec.csv_row())


def write_json(records, cfg: BenchConfig, fh) -> None:
    def clean(x):
        return None if isinstance(x, float) and math.isnan(x) else x

    payload = {
        "metadata": {"qspkit_version": __version__, "rng": RNG_ALGORITHM, "config": asdict(cfg)},
        "records": [{k: clean(v) for k, v in asdict(r).items()} for r in records],
    }
    json.dump(payload, fh, indent=2)
    fh.write("\n")
