"""Entropy dynamics, bounds, and steady-state floors for Markovian open quantum systems."""

from . import errors
from .dynamics import (
    IntegratorConfig,
    LindbladModel,
    TrajectoryRecord,
    convergence_order_check,
    dissipator,
    final_state,
    liouvillian_rhs,
    propagate,
)
from .entropy_bounds import (
    EIG_FLOOR,
    RATE_SATURATED,
    BoundReport,
    SteadyStateBound,
    TraceSquareAudit,
    bound_report,
    channel_gain,
    entropy_rate_exact,
    log_inequality_check,
    maximally_mixed_bound,
    monotonicity_threshold,
    rate_bound_at_entropy,
    rate_lower_bound,
    steady_state_bound,
    trace_square_audit,
    variance,
    variance_threshold,
    von_neumann_entropy,
)
from .models import ModelSpec, get_model, list_models, named_state
from .operators import (
    SpectralDecomposition,
    adjoint,
    assert_density,
    expectation,
    frobenius_norm_sq,
    ginibre_matrix,
    ginibre_state,
    gue_hermitian,
    hermitian_eig,
    is_density,
    is_hermitian,
    maximally_mixed,
    trace_product,
)
from .steady_state import build_superoperator, long_time_entropy, steady_state, unvec, vec

__version__ = "0.1.0"
