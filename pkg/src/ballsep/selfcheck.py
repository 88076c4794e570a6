"""Cross-checks between the closed forms and their internal structure.

Four independent consistency batteries, each returning a CheckResult:

* the sandwich bounds hold on a dense (alpha, n) grid;
* the chain p_full <= bracket <= leading term <= p_weight, alongside
  p_full <= p_bias, holds on a fixed grid plus random instances;
* the incomplete beta satisfies its reflection identity;
* low-dimension closed forms reduce to arcsin / square-root formulas
  and reproduce two hand-computable reference instances.

Every comparison here pits two different computational routes against
each other, so a sign or factor slip in any one route fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import probability
from .geometry import Ball, SeparationInstance, make_instance, symmetric_instance
from .montecarlo import DEFAULT_SEED, sample_unit_sphere
from .specfun import BetaArgs, reg_inc_beta

GRID_DIMENSIONS = (2, 3, 5, 10, 50)
GRID_SIN_PHI = (0.3, 0.5, 0.8)
GRID_K_FACTORS = (1.0, 2.0)


@dataclass
class CheckResult:
    """Outcome of one battery: cell count, failures, worst violation."""

    name: str
    cells: int
    tolerance: float
    worst: float
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def describe(self) -> str:
        state = "ok" if self.passed else f"FAIL ({len(self.failures)} cells)"
        return (
            f"{self.name}: {state}, {self.cells} cells, "
            f"worst violation {self.worst:.3e} vs tolerance {self.tolerance:.1e}"
        )


def _record(result: CheckResult, label: str, violation: float):
    result.worst = max(result.worst, violation)
    if violation > result.tolerance:
        result.failures.append(f"{label}: violation {violation:.6e}")


def check_lemma_sandwich(alpha_points: int = 100, n_max: int = 200, tol: float = 1e-12) -> CheckResult:
    """lower <= mid <= upper across a dense angle-by-dimension grid."""
    alphas = np.linspace(0.01, 0.5 * math.pi - 0.01, alpha_points)
    result = CheckResult(
        name="sandwich bounds",
        cells=alpha_points * (n_max - 1),
        tolerance=tol,
        worst=-math.inf,
    )
    for n in range(2, n_max + 1):
        for alpha in alphas:
            lower, mid, upper = probability.lemma_bounds(float(alpha), n)
            violation = max(lower - mid, mid - upper)
            _record(result, f"alpha={alpha:.6f} n={n}", violation)
    return result


def grid_instances() -> list:
    """Fixed symmetric instances covering the standard test grid."""
    return [
        symmetric_instance(n, s, k_factor=f)
        for n in GRID_DIMENSIONS
        for s in GRID_SIN_PHI
        for f in GRID_K_FACTORS
    ]


def random_instance(rng: np.random.Generator) -> SeparationInstance:
    """Well-posed instance with random dimension, radii, gap, and pose."""
    n = int(rng.integers(2, 201))
    r = float(rng.uniform(0.1, 5.0))
    p = float(rng.uniform(0.1, 5.0))
    delta = float(rng.uniform(1e-3, 10.0))
    axis = sample_unit_sphere(n, rng)
    c = rng.standard_normal(n) * float(rng.uniform(0.1, 3.0))
    x = c + (r + p + delta) * axis
    k_min = max(float(np.linalg.norm(c)), float(np.linalg.norm(x)))
    return make_instance(Ball(c, r), Ball(x, p), k_min * float(rng.uniform(1.0, 3.0)))


def _chain_violation(inst: SeparationInstance) -> float:
    # every probability is pulled through the module attribute so a
    # deliberately broken implementation is observed, not a stale alias
    lower, mid, upper = probability.lemma_bounds(inst.cone_angle, inst.dimension)
    p_full = probability.p_fully_random(inst)
    p_bias = probability.p_random_bias(inst)
    p_weight = probability.p_random_weight(inst)
    bracket = mid - lower
    return max(
        -p_full,
        p_full - bracket,
        bracket - mid,
        mid - p_weight,
        p_full - p_weight,
        p_full - p_bias,
    )


def check_ordering_chain(samples: int = 10000, seed: int = DEFAULT_SEED, tol: float = 1e-12) -> CheckResult:
    """p_full <= bracket <= leading term <= p_weight and p_full <= p_bias.

    Runs the fixed grid first (there the bias-range prefactor can be
    exactly 1, which pins down sign and factor errors deterministically)
    and then `samples` random instances.
    """
    fixed = grid_instances()
    result = CheckResult(
        name="ordering chain",
        cells=len(fixed) + samples,
        tolerance=tol,
        worst=-math.inf,
    )
    for inst in fixed:
        label = f"grid n={inst.dimension} sin_phi={inst.sin_phi:.3f} k={inst.bias_half_range:.4g}"
        _record(result, label, _chain_violation(inst))
    rng = np.random.default_rng(seed)
    for i in range(samples):
        inst = random_instance(rng)
        label = f"random[{i}] n={inst.dimension} sin_phi={inst.sin_phi:.4f}"
        _record(result, label, _chain_violation(inst))
    return result


def check_beta_symmetry(tol: float = 1e-11) -> CheckResult:
    """I(kappa; y, z) + I(1 - kappa; z, y) = 1 on a parameter grid."""
    kappas = np.linspace(0.01, 0.99, 99)
    shapes = (0.5, 1.0, 2.5, 10.0, 50.0)
    result = CheckResult(
        name="beta reflection",
        cells=len(kappas) * len(shapes) * len(shapes),
        tolerance=tol,
        worst=-math.inf,
    )
    for y in shapes:
        for z in shapes:
            for kappa in kappas:
                kappa = float(kappa)
                total = reg_inc_beta(BetaArgs(kappa, y, z)) + reg_inc_beta(
                    BetaArgs(1.0 - kappa, z, y)
                )
                _record(result, f"kappa={kappa:.2f} y={y} z={z}", abs(total - 1.0))
    return result


def check_analytic_reductions() -> CheckResult:
    """Planar and spatial closed forms against their elementary shapes.

    In dimension 2 the random-weight probability is 1 - 2 phi / pi; in
    dimension 3 it is 1 - sin(phi) and the fully random one collapses
    to |c - x| (1 - sin(phi))^2 / (4 k).  Two concrete instances with
    hand-checkable values are verified as well.
    """
    result = CheckResult(
        name="analytic reductions",
        cells=0,
        tolerance=0.0,
        worst=-math.inf,
    )

    def case(label: str, got: float, want: float, tol: float):
        result.cells += 1
        gap = abs(got - want) - tol
        result.worst = max(result.worst, gap)
        if gap > 0.0:
            result.failures.append(
                f"{label}: got {got!r}, want {want!r}, off by {abs(got - want):.3e}"
            )

    for s in (0.1, 0.3, 0.5, 0.7, 0.9):
        phi = math.asin(s)
        flat = symmetric_instance(2, s)
        case(
            f"dim2 arcsin s={s}",
            probability.p_random_weight(flat),
            1.0 - 2.0 * phi / math.pi,
            1e-10,
        )
        solid = symmetric_instance(3, s)
        case(
            f"dim3 weight s={s}",
            probability.p_random_weight(solid),
            1.0 - s,
            1e-12,
        )
        case(
            f"dim3 full s={s}",
            probability.p_fully_random(solid),
            solid.center_distance * (1.0 - s) ** 2 / (4.0 * solid.bias_half_range),
            1e-12,
        )

    flat_ref = make_instance(Ball([-2.0, 0.0], 1.0), Ball([2.0, 0.0], 1.0), 2.0)
    case("reference dim2 bias", probability.p_random_bias(flat_ref), 0.5, 0.0)
    case("reference dim2 weight", probability.p_random_weight(flat_ref), 2.0 / 3.0, 1e-12)
    case(
        "reference dim2 full",
        probability.p_fully_random(flat_ref),
        math.sqrt(3.0) / math.pi - 1.0 / 3.0,
        1e-12,
    )
    solid_ref = make_instance(
        Ball([0.0, 0.0, 0.0], 1.0), Ball([4.0, 0.0, 0.0], 1.0), 4.0
    )
    case("reference dim3 full", probability.p_fully_random(solid_ref), 0.0625, 1e-14)
    return result


def run_all(ordering_samples: int = 10000, seed: int = DEFAULT_SEED) -> list:
    """Every battery at its standard grid sizes, in a fixed order."""
    return [
        check_lemma_sandwich(),
        check_ordering_chain(samples=ordering_samples, seed=seed),
        check_beta_symmetry(),
        check_analytic_reductions(),
    ]
