"""Closed-form separation probabilities and the sandwich bounds.

Three sampling schemes over hyperplanes H[w; b]:

* random bias: w fixed to the axis direction, b uniform on [-k, k];
* random weight: w uniform on the unit sphere, b then chosen to pass
  through the tangent-cone vertex;
* fully random: w uniform on the sphere and b uniform on [-k, k],
  independently.

Each scheme admits an exact expression in terms of the instance gap,
the cone half angle phi, and the regularized incomplete beta function
at q = cos^2(phi).  The fully random probability is bounded above by
both partial ones, and the same beta-function sandwich that drives the
proofs is exposed directly as `lemma_bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArgumentOutOfRange, InternalConsistencyError
from .geometry import SeparationInstance
from .specfun import BetaArgs, log_beta, reg_inc_beta

# probabilities assembled from independently rounded pieces may land a
# few ulp outside [0, 1] or break the pairwise ordering by float noise;
# anything beyond this slack is treated as a genuine implementation bug
_CONSISTENCY_SLACK = 1e-12


def _check_unit_interval(value: float, label: str) -> float:
    if value < 0.0:
        if value < -_CONSISTENCY_SLACK:
            raise InternalConsistencyError(f"{label} = {value!r} is negative")
        return 0.0
    if value > 1.0:
        if value > 1.0 + _CONSISTENCY_SLACK:
            raise InternalConsistencyError(f"{label} = {value!r} exceeds 1")
        return 1.0
    return value


def p_random_bias(inst: SeparationInstance) -> float:
    """Probability that a uniform bias in [-k, k] separates along the axis.

    With the weight fixed to the unit axis direction the separating
    biases form an interval of length equal to the gap, entirely inside
    [-k, k], so the probability is gap / (2 k).
    """
    return _check_unit_interval(
        inst.gap / (2.0 * inst.bias_half_range), "random-bias probability"
    )


def p_random_weight(inst: SeparationInstance) -> float:
    """Probability that a uniform unit weight admits a separating bias.

    A direction w works iff its angle with the axis is within phi of a
    right angle's complement, i.e. the axis component exceeds sin(phi)
    in magnitude.  The spherical cap measure reduces to the regularized
    incomplete beta function I(q; (n-1)/2, 1/2) with q = cos^2(phi).
    """
    n = inst.dimension
    return reg_inc_beta(BetaArgs(inst.q_value, 0.5 * (n - 1), 0.5))


def _first_term(q: float, n: int) -> float:
    """q^a / (a * B(a, 1/2)) with a = (n - 1)/2, evaluated in log space."""
    a = 0.5 * (n - 1)
    return math.exp(a * math.log(q) - math.log(a) - log_beta(a, 0.5))


def p_fully_random(inst: SeparationInstance) -> float:
    """Probability that an independent uniform (weight, bias) pair separates.

    Averaging the per-direction bias interval length over the sphere
    gives

        (|c - x| / (2 k)) * (q^a / (a B(a, 1/2)) - sin(phi) I(q; a, 1/2))

    with a = (n - 1)/2 and q = cos^2(phi).
    """
    n = inst.dimension
    a = 0.5 * (n - 1)
    q = inst.q_value
    incomplete = reg_inc_beta(BetaArgs(q, a, 0.5))
    bracket = _first_term(q, n) - inst.sin_phi * incomplete
    value = inst.center_distance / (2.0 * inst.bias_half_range) * bracket
    return _check_unit_interval(value, "fully random probability")


def lemma_bounds(alpha: float, n: int) -> tuple[float, float, float]:
    """Sandwich around cos^(n-1)(alpha) / (a B(a, 1/2)), a = (n - 1)/2.

    Returns (lower, mid, upper) where

        upper = I(cos^2 alpha; a, 1/2)
        mid   = cos^(n-1)(alpha) / (a B(a, 1/2))
        lower = upper * sin(alpha)

    and lower <= mid <= upper holds for every alpha in (0, pi/2), n >= 2.
    """
    if not 0.0 < alpha < 0.5 * math.pi:
        raise ArgumentOutOfRange(f"alpha must lie strictly in (0, pi/2), got {alpha!r}")
    if n < 2:
        raise ArgumentOutOfRange(f"dimension must be >= 2, got {n}")
    a = 0.5 * (n - 1)
    cos_sq = math.cos(alpha) ** 2
    upper = reg_inc_beta(BetaArgs(cos_sq, a, 0.5))
    mid = math.exp((n - 1) * math.log(math.cos(alpha)) - math.log(a) - log_beta(a, 0.5))
    lower = upper * math.sin(alpha)
    return lower, mid, upper


def asymptotic_envelope(n: int) -> float:
    """Gamma(n/2) / (Gamma((n+1)/2) sqrt(pi)), the large-n decay envelope.

    Equals 1 / (a B(a, 1/2)) with a = (n - 1)/2 and shrinks like
    sqrt(2 / (pi n)); the fully random probability for a fixed geometry
    is O of this envelope as the dimension grows.
    """
    if n < 2:
        raise ArgumentOutOfRange(f"dimension must be >= 2, got {n}")
    return math.exp(math.lgamma(0.5 * n) - math.lgamma(0.5 * (n + 1))) / math.sqrt(math.pi)


@dataclass(frozen=True)
class SeparationReport:
    """All three exact probabilities for one instance, with the geometry.

    Construction re-checks the invariants that make the numbers
    trustworthy: every probability in [0, 1], and the fully random one
    no larger than either partial one (up to float slack).
    """

    p_random_bias: float
    p_random_weight: float
    p_fully_random: float
    q_value: float
    sin_phi: float
    dimension: int

    def __post_init__(self):
        for label in ("p_random_bias", "p_random_weight", "p_fully_random"):
            value = getattr(self, label)
            if not 0.0 <= value <= 1.0:
                raise InternalConsistencyError(f"{label} = {value!r} outside [0, 1]")
        if self.p_fully_random > self.p_random_weight + _CONSISTENCY_SLACK:
            raise InternalConsistencyError(
                "fully random probability exceeds random-weight probability"
            )
        if self.p_fully_random > self.p_random_bias + _CONSISTENCY_SLACK:
            raise InternalConsistencyError(
                "fully random probability exceeds random-bias probability"
            )


def separation_report(inst: SeparationInstance) -> SeparationReport:
    """Evaluate all three closed forms for one validated instance."""
    return SeparationReport(
        p_random_bias=p_random_bias(inst),
        p_random_weight=p_random_weight(inst),
        p_fully_random=p_fully_random(inst),
        q_value=inst.q_value,
        sin_phi=inst.sin_phi,
        dimension=inst.dimension,
    )
