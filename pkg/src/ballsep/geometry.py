"""Euclidean balls, hyperplanes, and the strict separation predicate.

A hyperplane is the zero locus of u -> (w|u) - b with unit normal
(the "weight" w) and scalar offset (the "bias" b).  An open ball pair
with a positive gap between the spheres admits a unique double cone
tangent to both balls; its vertex, half angle, and the derived quantity
q = 1 - sin^2(phi) are what the closed-form separation probabilities
consume, so they are computed once per validated instance.

All types are immutable after construction and all operations are pure,
so everything here is safe to share across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    ArgumentOutOfRange,
    BallsOverlapOrTouch,
    DimensionMismatch,
    DimensionTooSmall,
    KInsufficient,
)

# unit-norm tolerance after explicit normalization; weights with smaller
# norm carry no usable direction and are rejected
UNIT_TOL = 1e-12
DEGENERATE_NORM = 1e-12


def _as_vector(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ArgumentOutOfRange(f"{name} must be a one-dimensional real vector")
    if not np.all(np.isfinite(arr)):
        raise ArgumentOutOfRange(f"{name} must contain only finite values")
    arr.flags.writeable = False
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Ball:
    """Open Euclidean ball {u : |center - u| < radius}."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = _as_vector(self.center, "ball center")
        if center.size < 2:
            raise DimensionTooSmall(f"balls need dimension >= 2, got {center.size}")
        radius = float(self.radius)
        if not radius > 0.0:
            raise ArgumentOutOfRange(f"ball radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dimension(self) -> int:
        return self.center.size


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """Zero locus of u -> (weight|u) - bias.

    The weight is normalized on construction; inputs with norm below
    1e-12 are rejected as degenerate.  Note H[w; b] and H[-w; -b] denote
    the same point set.
    """

    weight: np.ndarray
    bias: float

    def __post_init__(self):
        weight = np.array(self.weight, dtype=float)
        if weight.ndim != 1 or weight.size == 0 or not np.all(np.isfinite(weight)):
            raise ArgumentOutOfRange("hyperplane weight must be a finite real vector")
        norm = float(np.linalg.norm(weight))
        if norm < DEGENERATE_NORM:
            raise ArgumentOutOfRange(
                f"hyperplane weight norm {norm!r} is below {DEGENERATE_NORM}; degenerate"
            )
        object.__setattr__(self, "weight", _frozen(weight / norm))
        object.__setattr__(self, "bias", float(self.bias))

    @property
    def dimension(self) -> int:
        return self.weight.size

    def signed_offset(self, point) -> float:
        """(weight|point) - bias; positive on the weight side."""
        point = np.asarray(point, dtype=float)
        if point.shape != self.weight.shape:
            raise DimensionMismatch(
                f"point dimension {point.shape} does not match hyperplane {self.weight.shape}"
            )
        return float(self.weight @ point - self.bias)


@dataclass(frozen=True, eq=False)
class SeparationInstance:
    """Validated pair of strictly disjoint balls plus the bias half range.

    Construction enforces |c - x| = r + p + gap with gap > 0 and
    bias_half_range >= max(|c|, |x|) > 0.  Derived geometry (gap, axis
    direction, tangent-cone vertex and half angle, q value) is exposed as
    read-only properties.  The axis direction is oriented from the first
    ball's center toward the second's.
    """

    ball_a: Ball
    ball_b: Ball
    bias_half_range: float

    def __post_init__(self):
        a, b = self.ball_a, self.ball_b
        if not isinstance(a, Ball) or not isinstance(b, Ball):
            raise ArgumentOutOfRange("ball_a and ball_b must be Ball instances")
        if a.dimension != b.dimension:
            raise DimensionMismatch(
                f"balls have different dimensions {a.dimension} and {b.dimension}"
            )
        dist = float(np.linalg.norm(a.center - b.center))
        if dist <= a.radius + b.radius:
            raise BallsOverlapOrTouch("balls overlap or touch (delta <= 0)")
        k = float(self.bias_half_range)
        k_min = max(float(np.linalg.norm(a.center)), float(np.linalg.norm(b.center)))
        if not k >= k_min:
            raise KInsufficient(
                f"bias half range {k!r} is below max(|c|, |x|) = {k_min!r}"
            )
        object.__setattr__(self, "bias_half_range", k)

    @property
    def dimension(self) -> int:
        return self.ball_a.dimension

    @cached_property
    def center_distance(self) -> float:
        """|c - x| = r + p + gap."""
        return float(np.linalg.norm(self.ball_a.center - self.ball_b.center))

    @cached_property
    def gap(self) -> float:
        """Distance between the two spheres along the axis (delta > 0)."""
        return self.center_distance - self.ball_a.radius - self.ball_b.radius

    @cached_property
    def axis_dir(self) -> np.ndarray:
        """Unit vector from ball_a's center toward ball_b's center."""
        diff = self.ball_b.center - self.ball_a.center
        return _frozen(diff / self.center_distance)

    @cached_property
    def cone_vertex(self) -> np.ndarray:
        """Vertex of the double cone tangent to both balls.

        Lies on the open segment between the centers, weighted by the
        opposite radii: v = (p*c + r*x) / (p + r).
        """
        a, b = self.ball_a, self.ball_b
        total = a.radius + b.radius
        return _frozen((b.radius * a.center + a.radius * b.center) / total)

    @cached_property
    def sin_phi(self) -> float:
        """sin of the cone half angle: (p + r) / (p + r + gap), in (0, 1)."""
        return (self.ball_a.radius + self.ball_b.radius) / self.center_distance

    @cached_property
    def cone_angle(self) -> float:
        """Half angle phi between the cone's generatrices and its axis."""
        return math.asin(self.sin_phi)

    @cached_property
    def q_value(self) -> float:
        """q = 1 - sin^2(phi) = cos^2(phi), in (0, 1)."""
        return 1.0 - self.sin_phi * self.sin_phi


def make_instance(ball_a: Ball, ball_b: Ball, k: float) -> SeparationInstance:
    """Validate a ball pair and bias half range; return the instance.

    Raises DimensionMismatch for unequal dimensions, BallsOverlapOrTouch
    when the closed balls intersect, and KInsufficient when k is below
    max(|c|, |x|).
    """
    return SeparationInstance(ball_a, ball_b, k)


def symmetric_instance(
    dim: int,
    sin_phi: float,
    r: float = 1.0,
    p: float = 1.0,
    k_factor: float = 1.0,
) -> SeparationInstance:
    """Instance with balls at -h*e1 and +h*e1 realizing a given sin(phi).

    The centers sit at distance (r + p)/sin_phi apart, so the gap is
    (r + p)(1 - sin_phi)/sin_phi, and the bias half range is k_factor
    times max(|c|, |x|).  Requires 0 < sin_phi < 1 and k_factor >= 1.
    """
    if not 0.0 < sin_phi < 1.0:
        raise ArgumentOutOfRange(f"sin_phi must lie strictly in (0, 1), got {sin_phi!r}")
    if not k_factor >= 1.0:
        raise ArgumentOutOfRange(f"k_factor must be >= 1, got {k_factor!r}")
    if dim < 2:
        raise DimensionTooSmall(f"dimension must be >= 2, got {dim}")
    half = 0.5 * (r + p) / sin_phi
    c = np.zeros(dim)
    c[0] = -half
    x = np.zeros(dim)
    x[0] = half
    return make_instance(Ball(c, r), Ball(x, p), k_factor * half)


def separates(h: Hyperplane, inst: SeparationInstance) -> bool:
    """True iff both open balls lie strictly on opposite sides of h.

    Tangent hyperplanes (exact equality with a radius) do not count as
    separating; the tie has probability zero under every sampling scheme
    used here.
    """
    if h.dimension != inst.dimension:
        raise DimensionMismatch(
            f"hyperplane dimension {h.dimension} does not match instance {inst.dimension}"
        )
    hit = separates_batch(h.weight[None, :], np.array([h.bias]), inst)
    return bool(hit[0])


def separates_batch(weights: np.ndarray, biases: np.ndarray, inst: SeparationInstance) -> np.ndarray:
    """Vectorized separation predicate.

    weights: array of shape (m, n) whose rows are unit weights; biases:
    shape (m,).  Returns a boolean array of shape (m,).
    """
    weights = np.asarray(weights, dtype=float)
    biases = np.asarray(biases, dtype=float)
    if weights.ndim != 2 or weights.shape[1] != inst.dimension:
        raise DimensionMismatch(
            f"weights shape {weights.shape} does not match instance dimension {inst.dimension}"
        )
    if biases.shape != (weights.shape[0],):
        raise DimensionMismatch(
            f"biases shape {biases.shape} does not match {weights.shape[0]} weights"
        )
    a, b = inst.ball_a, inst.ball_b
    proj_a = weights @ a.center - biases
    proj_b = weights @ b.center - biases
    return ((proj_a > a.radius) & (proj_b < -b.radius)) | (
        (proj_a < -a.radius) & (proj_b > b.radius)
    )


def cone_vertex(inst: SeparationInstance) -> np.ndarray:
    """Vertex of the double cone tangent to both balls (read-only array)."""
    return inst.cone_vertex


def exists_separating_bias(weight, inst: SeparationInstance) -> bool:
    """True iff some bias makes the given unit weight separating.

    Equivalent to the projections of the two balls onto span(weight)
    being disjoint: |(weight | c - x)| > r + p.  When true, the bias
    (weight | v) through the cone vertex works and automatically lies
    within [-k, k], so no explicit bias-range check is needed.
    """
    weight = np.asarray(weight, dtype=float)
    if weight.shape != (inst.dimension,):
        raise DimensionMismatch(
            f"weight shape {weight.shape} does not match instance dimension {inst.dimension}"
        )
    span = float(weight @ (inst.ball_a.center - inst.ball_b.center))
    return abs(span) > inst.ball_a.radius + inst.ball_b.radius


def exists_separating_bias_batch(weights: np.ndarray, inst: SeparationInstance) -> np.ndarray:
    """Vectorized form of `exists_separating_bias` for (m, n) unit weights."""
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or weights.shape[1] != inst.dimension:
        raise DimensionMismatch(
            f"weights shape {weights.shape} does not match instance dimension {inst.dimension}"
        )
    span = weights @ (inst.ball_a.center - inst.ball_b.center)
    return np.abs(span) > inst.ball_a.radius + inst.ball_b.radius


def bias_gap_interval(inst: SeparationInstance) -> tuple[float, float]:
    """Axis coordinates (lo, hi) of the separating-bias interval.

    For the axis-aligned weight, H[axis_dir; b] separates exactly when b
    lies between the two balls' projection intervals; hi - lo equals the
    gap.
    """
    lo = float(inst.axis_dir @ inst.ball_a.center) + inst.ball_a.radius
    hi = float(inst.axis_dir @ inst.ball_b.center) - inst.ball_b.radius
    return lo, hi
