"""JSON interchange formats.

Complex numbers are ``[re, im]`` pairs. Polynomials are
``{"support_start": int, "coeffs": [[re, im], ...]}``; sequences use
``values`` in place of ``coeffs``; phase factors are
``{"lambda": r, "phi": [...], "theta": [...], "canonical": bool}``.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError
from .gqsp import GqspPhaseFactors
from .poly import LaurentPolynomial
from .riemann_hilbert import NlftSequence


def complex_to_json(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=np.complex128)]


def complex_from_json(items) -> np.ndarray:
    try:
        arr = np.array(items, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex list: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError("complex values must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise ValidationError("expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(f"missing field(s): {', '.join(missing)}")


def poly_to_json(p: LaurentPolynomial) -> dict:
    return {"support_start": p.support_start, "coeffs": complex_to_json(p.coeffs)}


def poly_from_json(obj) -> LaurentPolynomial:
    _require(obj, "support_start", "coeffs")
    return LaurentPolynomial(int(obj["support_start"]), complex_from_json(obj["coeffs"]))


def sequence_to_json(F: NlftSequence) -> dict:
    return {"support_start": F.support_start, "values": complex_to_json(F.values)}


def sequence_from_json(obj) -> NlftSequence:
    _require(obj, "support_start", "values")
    return NlftSequence(int(obj["support_start"]), complex_from_json(obj["values"]))


def phases_to_json(ph: GqspPhaseFactors) -> dict:
    return {"lambda": ph.lam, "phi": ph.phi.tolist(), "theta": ph.theta.tolist(),
            "canonical": bool(ph.canonical)}


def phases_from_json(obj) -> GqspPhaseFactors:
    _require(obj, "lambda", "phi", "theta")
    return GqspPhaseFactors(float(obj["lambda"]), obj["phi"], obj["theta"],
                            canonical=bool(obj.get("canonical", False)))


def completion_to_json(res, b: LaurentPolynomial) -> dict:
    return {
        "a": poly_to_json(res.a),
        "b": poly_to_json(b),
        "c_hat": complex_to_json(res.c_hat),
        "grid_size": res.grid_size,
        "eta": res.eta_used,
        "residual": res.residual,
    }


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None
