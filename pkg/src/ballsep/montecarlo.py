"""Monte Carlo estimators with a chunk-invariant, per-block RNG layout.

Samples are organized into fixed logical blocks of 65536.  Block i of a
run with seed s draws from Philox keyed by splitmix64 mixing of (s, i),
never from a shared stream, so the estimate for a given (instance,
samples, seed) triple is byte-identical no matter how many chunks the
blocks are dealt out to.  Within every block the draw order is weights
first, then biases; estimators that need only one kind still consume
from the same positions, which keeps the fully random estimate coupled
below the random-weight estimate sample by sample on a shared seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ArgumentOutOfRange, InternalConsistencyError
from .geometry import (
    SeparationInstance,
    bias_gap_interval,
    exists_separating_bias_batch,
    separates_batch,
)

DEFAULT_SEED = 42

_BLOCK = 1 << 16
_MASK64 = (1 << 64) - 1
_NORM_FLOOR = 1e-12


def _mix64(z: int) -> int:
    # splitmix64 finalizer; full-period bijection on 64-bit words
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _block_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one logical block of one run."""
    k0 = _mix64(seed ^ index)
    k1 = _mix64(k0)
    return np.random.Generator(np.random.Philox(key=k0 | (k1 << 64)))


@dataclass(frozen=True)
class McConfig:
    """Sample count, seed, and chunk count for one estimation run.

    `chunks` only partitions the work; it never changes the result.
    """

    samples: int
    seed: int = DEFAULT_SEED
    chunks: int = 1

    def __post_init__(self):
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ArgumentOutOfRange("samples must be >= 1")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MASK64:
            raise ArgumentOutOfRange(f"seed must be a 64-bit unsigned int, got {self.seed!r}")
        if not isinstance(self.chunks, int) or not 1 <= self.chunks <= self.samples:
            raise ArgumentOutOfRange(
                f"chunks must be between 1 and samples, got {self.chunks!r}"
            )


@dataclass(frozen=True)
class Estimate:
    """Bernoulli mean with its plug-in standard error."""

    mean: float
    samples: int
    std_error: float = field(init=False)

    def __post_init__(self):
        se = math.sqrt(self.mean * (1.0 - self.mean) / self.samples)
        object.__setattr__(self, "std_error", se)


def sample_unit_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """One point uniform on the unit sphere in R^n."""
    if n < 2:
        raise ArgumentOutOfRange(f"dimension must be >= 2, got {n}")
    return _sphere_block(rng, 1, n)[0]


def sample_bias(k: float, rng: np.random.Generator) -> float:
    """One bias uniform on [-k, k]."""
    if not k > 0.0:
        raise ArgumentOutOfRange(f"bias half range must be positive, got {k!r}")
    return float(rng.uniform(-k, k))


def _sphere_block(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    """m uniform unit vectors in R^n, rows of an (m, n) array."""
    draws = rng.standard_normal((m, n))
    norms = np.linalg.norm(draws, axis=1)
    # a near-zero Gaussian vector has no usable direction; redraw it
    while True:
        bad = norms < _NORM_FLOOR
        if not bad.any():
            break
        redraw = rng.standard_normal((int(bad.sum()), n))
        draws[bad] = redraw
        norms[bad] = np.linalg.norm(redraw, axis=1)
    return draws / norms[:, None]


def bernoulli_estimate(
    cfg: McConfig,
    block_hits: Callable[[np.random.Generator, int], int],
    block: int = _BLOCK,
) -> Estimate:
    """Run `block_hits` over every logical block and average the hits.

    Blocks are dealt to chunks round robin and each chunk's hits are
    accumulated as exact integers, so the final mean depends only on the
    per-block results, not on the chunk count.
    """
    n_blocks = -(-cfg.samples // block)
    total = 0
    for chunk in range(min(cfg.chunks, n_blocks)):
        for index in range(chunk, n_blocks, cfg.chunks):
            count = min(block, cfg.samples - index * block)
            total += int(block_hits(_block_rng(cfg.seed, index), count))
    return Estimate(mean=total / cfg.samples, samples=cfg.samples)


def _canonical_axis(inst: SeparationInstance) -> np.ndarray:
    """Axis direction with its first nonzero component made positive.

    Fixing the sign convention makes the random-bias estimate invariant
    under swapping the two balls, which flips `axis_dir`.
    """
    axis = inst.axis_dir
    for value in axis:
        if value != 0.0:
            return axis if value > 0.0 else -axis
    raise InternalConsistencyError("axis direction is the zero vector")


def estimate_p_full(inst: SeparationInstance, cfg: McConfig) -> Estimate:
    """Monte Carlo estimate for independent uniform weight and bias."""
    n = inst.dimension
    k = inst.bias_half_range

    def hits(rng: np.random.Generator, m: int) -> int:
        weights = _sphere_block(rng, m, n)
        biases = rng.uniform(-k, k, m)
        return int(separates_batch(weights, biases, inst).sum())

    return bernoulli_estimate(cfg, hits)


def estimate_p_weight(inst: SeparationInstance, cfg: McConfig) -> Estimate:
    """Monte Carlo estimate for a uniform weight with best-case bias."""
    n = inst.dimension

    def hits(rng: np.random.Generator, m: int) -> int:
        weights = _sphere_block(rng, m, n)
        return int(exists_separating_bias_batch(weights, inst).sum())

    return bernoulli_estimate(cfg, hits)


def estimate_p_bias(inst: SeparationInstance, cfg: McConfig) -> Estimate:
    """Monte Carlo estimate for a uniform bias along the fixed axis."""
    lo, hi = bias_gap_interval(inst)
    if abs((hi - lo) - inst.gap) > 1e-10 * max(1.0, inst.gap):
        raise InternalConsistencyError(
            "separating-bias interval length disagrees with the instance gap"
        )
    weight = _canonical_axis(inst)
    k = inst.bias_half_range

    def hits(rng: np.random.Generator, m: int) -> int:
        biases = rng.uniform(-k, k, m)
        weights = np.broadcast_to(weight, (m, weight.size))
        return int(separates_batch(weights, biases, inst).sum())

    return bernoulli_estimate(cfg, hits)
