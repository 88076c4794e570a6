"""Separation probabilities for ball pairs under partly random hyperplanes."""

from .errors import (
    ArgumentOutOfRange,
    BallsepError,
    BallsOverlapOrTouch,
    DimensionMismatch,
    DimensionTooSmall,
    EmptyInstanceList,
    InternalConsistencyError,
    KInsufficient,
    NoConvergence,
    NonPositiveArgument,
)
from .geometry import (
    Ball,
    Hyperplane,
    SeparationInstance,
    bias_gap_interval,
    cone_vertex,
    exists_separating_bias,
    exists_separating_bias_batch,
    make_instance,
    separates,
    separates_batch,
    symmetric_instance,
)
from .montecarlo import (
    DEFAULT_SEED,
    Estimate,
    McConfig,
    estimate_p_bias,
    estimate_p_full,
    estimate_p_weight,
    sample_bias,
    sample_unit_sphere,
)
from .probability import (
    SeparationReport,
    asymptotic_envelope,
    lemma_bounds,
    p_fully_random,
    p_random_bias,
    p_random_weight,
    separation_report,
)
from .specfun import BetaArgs, beta, log_beta, log_gamma, reg_inc_beta
from .tessellation import (
    MODES,
    SignPattern,
    WidthPlan,
    estimate_all_pairs,
    pair_separated_by_any,
    plan_width,
    sign_pattern,
    width_for_confidence,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentOutOfRange",
    "Ball",
    "BallsOverlapOrTouch",
    "BallsepError",
    "BetaArgs",
    "DEFAULT_SEED",
    "DimensionMismatch",
    "DimensionTooSmall",
    "EmptyInstanceList",
    "Estimate",
    "Hyperplane",
    "InternalConsistencyError",
    "KInsufficient",
    "MODES",
    "McConfig",
    "NoConvergence",
    "NonPositiveArgument",
    "SeparationInstance",
    "SeparationReport",
    "SignPattern",
    "WidthPlan",
    "asymptotic_envelope",
    "beta",
    "bias_gap_interval",
    "cone_vertex",
    "estimate_all_pairs",
    "estimate_p_bias",
    "estimate_p_full",
    "estimate_p_weight",
    "exists_separating_bias",
    "exists_separating_bias_batch",
    "lemma_bounds",
    "log_beta",
    "log_gamma",
    "make_instance",
    "p_fully_random",
    "p_random_bias",
    "p_random_weight",
    "pair_separated_by_any",
    "plan_width",
    "reg_inc_beta",
    "sample_bias",
    "sample_unit_sphere",
    "separates",
    "separates_batch",
    "separation_report",
    "sign_pattern",
    "symmetric_instance",
    "width_for_confidence",
    "__version__",
]
