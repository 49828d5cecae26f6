"""Volume computation: exact triangulation, voxel counting, Monte Carlo.

Monte Carlo sampling uses a counter-based generator (Philox) keyed by
(seed, block), with a fixed block size.  Sample i lives in block i // BLOCK
at offset i % BLOCK, so any sharding of the blocks reproduces the serial
stream bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .bodies import GridSet, VPolytope
from .errors import PreconditionError
from .geometry import MembershipOracle, exact_volume
from .rationals import format_exact

MC_BLOCK = 1 << 16
DEFAULT_SAMPLES = 1_000_000

KIND_EXACT = "exact"
KIND_GRID = "grid"
KIND_MONTECARLO = "montecarlo"


@dataclass(frozen=True)
class VolumeEstimate:
    value: Union[Fraction, float]
    kind: str
    stderr: Union[Fraction, float] = Fraction(0)
    samples: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind in (KIND_EXACT, KIND_GRID) and self.stderr != 0:
            raise PreconditionError("deterministic estimates carry stderr 0")
        if self.value < 0:
            raise PreconditionError("volumes are nonnegative")

    def to_json_dict(self) -> dict:
        value = self.value
        if isinstance(value, Fraction):
            value = format_exact(value)
        stderr = self.stderr
        if isinstance(stderr, Fraction):
            stderr = format_exact(stderr)
        return {
            "value": value,
            "kind": self.kind,
            "stderr": stderr,
            "samples": self.samples,
            "seed": self.seed,
        }


def volume_exact(poly: VPolytope) -> VolumeEstimate:
    """Exact rational volume by fan triangulation from the vertex centroid."""
    return VolumeEstimate(value=exact_volume(poly), kind=KIND_EXACT)


def volume_grid(grid: GridSet) -> VolumeEstimate:
    """|cells| * h^dim, exact by definition of the voxel model."""
    return VolumeEstimate(value=grid.measure(), kind=KIND_GRID)


def block_generator(seed: int, block: int) -> Generator:
    """The canonical generator for one sampling block."""
    return Generator(Philox(key=SeedSequence((seed, block)).generate_state(2, np.uint64)))


def rng_for(seed: int, label: str) -> Generator:
    """Named deterministic substream: same (seed, label) -> same stream."""
    import zlib

    return Generator(Philox(key=SeedSequence(
        (seed, zlib.crc32(label.encode("utf-8")))
    ).generate_state(2, np.uint64)))


def volume_mc(
    oracle: MembershipOracle,
    box: Sequence[tuple],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    shards: int = 1,
) -> VolumeEstimate:
    """Hit-or-miss volume estimate inside an axis-aligned bounding box.

    Deterministic given (seed, samples); the shard count only groups the
    fixed sampling blocks, so the hit count never depends on it.
    """
    if samples < 1:
        raise PreconditionError("need at least one sample")
    if len(box) != oracle.dim:
        raise PreconditionError("box dimension mismatch")
    lows = np.array([float(lo) for lo, _ in box])
    highs = np.array([float(hi) for _, hi in box])
    widths = highs - lows
    box_volume = float(np.prod(widths))
    if box_volume <= 0:
        raise PreconditionError("bounding box has zero volume")

    def block_hits(block: int) -> int:
        count = min(MC_BLOCK, samples - block * MC_BLOCK)
        rg = block_generator(seed, block)
        pts = lows + rg.random((count, oracle.dim)) * widths
        if oracle.batch is not None:
            return int(np.count_nonzero(oracle.batch(pts)))
        return sum(1 for p in pts if oracle.test(p))

    n_blocks = -(-samples // MC_BLOCK)
    if shards > 1:
        # round-robin grouping; totals match the serial run by construction
        # because every block is keyed by (seed, block) alone
        hits = sum(sum(block_hits(b) for b in range(s, n_blocks, shards))
                   for s in range(shards))
    else:
        hits = sum(block_hits(b) for b in range(n_blocks))

    p_hat = hits / samples
    value = box_volume * p_hat
    stderr = box_volume * math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return VolumeEstimate(value=value, kind=KIND_MONTECARLO, stderr=stderr,
                          samples=samples, seed=seed)
