"""Rate adaptation of a fixed mother matrix by shortening."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decoder import DEFAULT_MAX_ITERS, DecodeResult, decode_shortened
from .matrix import SparseParityMatrix, as_bits


@dataclass(frozen=True)
class ShortenedCode:
    """A mother matrix plus a set of source positions Alice discloses in clear."""

    matrix: SparseParityMatrix
    positions: np.ndarray

    @property
    def effective_rate(self) -> float:
        return (self.matrix.m + self.positions.size) / self.matrix.n

    @property
    def disclosed_bits(self) -> int:
        return int(self.positions.size)

    def disclose(self, x) -> np.ndarray:
        return as_bits(x, self.matrix.n)[self.positions]

    def decode(self, s, priors, disclosed, max_iters: int = DEFAULT_MAX_ITERS) -> DecodeResult:
        return decode_shortened(self.matrix, s, priors, self.positions, disclosed, max_iters)


def shorten(M: SparseParityMatrix, positions) -> ShortenedCode:
    pos = np.unique(np.asarray(positions, dtype=np.int64))
    if pos.size and (pos[0] < 0 or pos[-1] >= M.n):
        raise IndexError(f"shortened positions must lie in [0, {M.n})")
    pos.flags.writeable = False
    return ShortenedCode(M, pos)


def nested_positions(n: int, fraction: float, seed) -> np.ndarray:
    """First ``round(fraction * n)`` entries of a seeded permutation of ``range(n)``.

    Larger fractions under the same seed always give supersets.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    perm = np.random.default_rng(seed).permutation(n)
    return np.sort(perm[: int(round(fraction * n))])
