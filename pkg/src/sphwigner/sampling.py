"""Reproducible random spherical tetrahedra.

Generator
---------
A 64-bit linear congruential generator,

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

with uniforms taken from the top 53 bits, ``(state >> 11) * 2**-53``.
Standard normals come from the Box-Muller transform on pairs of uniforms
``(u1, u2)``: ``r = sqrt(-2 log(1 - u1))``, giving ``r cos(2 pi u2)`` then
``r sin(2 pi u2)``.

Each sample index owns its own substream, seeded with
``splitmix64((seed + (index + 1) * 0x9E3779B97F4A7C15) mod 2**64)``, so
sample ``n`` does not depend on how many redraws earlier samples needed
or on which worker produced them.

Sampling
--------
Four points on S^3 are drawn by normalizing 4-vectors of normals.  A draw
is rejected if any edge length leaves ``length_band``, if ``det G`` falls
below ``min_margin``, or if the tetrahedron fails :func:`validate_lengths`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DegenerateError, ExhaustedError, NotRealizable
from .tetra import TetLengths, gram_det, lengths_from_vertices, validate_lengths

MASK64 = (1 << 64) - 1
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_REDRAWS = 10_000


def splitmix64(x: int) -> int:
    x = (x + GOLDEN_GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class Lcg64:
    """64-bit LCG with a Box-Muller normal stream."""

    def __init__(self, state: int):
        self.state = state & MASK64
        self._spare = None

    @classmethod
    def substream(cls, seed: int, index: int) -> "Lcg64":
        return cls(splitmix64((seed + (index + 1) * GOLDEN_GAMMA) & MASK64))

    def next_u64(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & MASK64
        return self.state

    def uniform(self) -> float:
        """Uniform on [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1, u2 = self.uniform(), self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def point_on_s3(self) -> np.ndarray:
        while True:
            v = np.array([self.normal() for _ in range(4)])
            n = math.sqrt(float(v @ v))
            if n > 1e-12:
                return v / n


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    count: int
    min_margin: float = 1e-6
    length_band: tuple[float, float] = (0.05, math.pi - 0.05)

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        lo, hi = self.length_band
        if not 0.0 <= lo < hi <= math.pi:
            raise ValueError(f"bad length band {self.length_band}")
        if self.min_margin < 0:
            raise ValueError("min_margin must be non-negative")


def _accept(lengths: TetLengths, config: SampleConfig) -> bool:
    lo, hi = config.length_band
    if not all(lo < x < hi for x in lengths):
        return False
    if gram_det(lengths) < config.min_margin:
        return False
    return bool(validate_lengths(lengths))


def draw_one(config: SampleConfig, index: int) -> tuple[TetLengths, int]:
    """Sample number ``index`` and the number of draws it took."""
    rng = Lcg64.substream(config.seed, index)
    for attempt in range(1, MAX_REDRAWS + 1):
        verts = np.array([rng.point_on_s3() for _ in range(4)])
        try:
            lengths = lengths_from_vertices(verts)
        except DegenerateError:
            continue
        if _accept(lengths, config):
            return lengths, attempt
    raise ExhaustedError(f"sample {index}: no valid tetrahedron in {MAX_REDRAWS} draws")


def iter_samples(config: SampleConfig) -> Iterator[tuple[TetLengths, int]]:
    for index in range(config.count):
        yield draw_one(config, index)


def sample_tetrahedra(config: SampleConfig) -> list[TetLengths]:
    return [lengths for lengths, _ in iter_samples(config)]


def perturb(lengths: TetLengths, magnitude: float, seed: int) -> TetLengths:
    """Add independent uniform noise in [-magnitude, magnitude] to each length."""
    if magnitude < 0:
        raise ValueError("magnitude must be non-negative")
    if magnitude == 0:
        return lengths
    rng = Lcg64(splitmix64(seed & MASK64))
    noisy = TetLengths([x + magnitude * (2.0 * rng.uniform() - 1.0) for x in lengths])
    check = validate_lengths(noisy)
    if not check:
        raise NotRealizable(f"perturbed lengths invalid: {check.status.value} ({check.detail})")
    return noisy
