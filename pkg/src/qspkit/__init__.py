"""Phase factors for generalized quantum signal processing via the inverse
nonlinear Fourier transform on SU(2)."""

__version__ = "0.1.0"

from .errors import (Degenerate, NonConvergent, NonPositivePivot, NonRealTangent, NotCanonical,
                     NumericalError, QspkitError, SingularSystem, SupNormTooLarge, ValidationError)
from .poly import LaurentPolynomial, UnitCircleGrid, coeffs_from_grid, eval_on_grid, sup_norm
from .weiss import CompletionResult, choose_grid_size, complete, schwarz_transform
from .riemann_hilbert import NlftSequence, build_system, inverse_nlft_direct
from .half_cholesky import DisplacementGenerator, inverse_nlft_fast, schur_ldl
from .gqsp import (GqspPhaseFactors, PhasePrefactors, Subalgebra, analytic_to_laurent, canonicalize,
                   chebyshev_target_to_laurent, detect_subalgebra, normalize_leading_phase,
                   phases_from_sequence, prefactors, sequence_from_phases, switch_polynomials)
from .nlft import (NlftPair, Su2Sample, check_properties, evaluate_protocol, forward_nlft, layer_strip,
                   refine_sequence)


def synthesize(b, eps=1e-14, eta=None, method="half_cholesky"):
    """Target ``b`` to canonical GQSP phase factors in one call.

    Returns ``(phases, sequence, completion)``; the protocol produces
    ``(z^n a, b)`` on ``|0>``.
    """
    from .bench import invert

    res = complete(b, eps=eps, eta=eta)
    F = invert(method, res, b)
    return phases_from_sequence(F), F, res
