"""Cascade: interactive reconciliation by block parities and binary search.

Each pass shuffles the positions with a seeded permutation and cuts them
into blocks. Alice announces every block parity and Bob answers with his
own. A block whose parities disagree holds an odd number of errors; a
binary search over halves (one Alice parity and one Bob reply per step)
pins down one of them, which Bob flips. That flip changes the parity of the
block holding the same position in every other pass, so blocks that used
to agree can become odd again; those are queued and resolved smallest
first, which is what lets corrections cascade back through earlier passes.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .domain import JointDistribution
from .ldpc.matrix import as_bits
from .session.transcript import Direction, Transcript

A2B = Direction.ALICE_TO_BOB
B2A = Direction.BOB_TO_ALICE


@dataclass(frozen=True)
class CascadeConfig:
    passes: int = 4
    k1: int = 8
    growth: float = 2.0
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.passes < 1:
            raise ValueError("passes must be >= 1")
        if self.k1 < 1:
            raise ValueError("k1 must be >= 1")
        if self.growth < 1:
            raise ValueError("growth must be >= 1")

    def block_size(self, pass_index: int, n: int) -> int:
        return int(min(n, max(1, math.floor(self.k1 * self.growth ** pass_index))))

    @classmethod
    def for_error_rate(cls, qber: float, n: int, passes: int = 4, growth: float = 2.0,
                       shuffle_seed: int = 0) -> "CascadeConfig":
        """Classical recipe: ``k1 = ceil(0.73 / qber)`` clamped to ``[2, n]``."""
        k1 = n if qber <= 0 else math.ceil(0.73 / qber)
        return cls(passes, int(min(max(k1, 2), n)), growth, shuffle_seed)

    @classmethod
    def for_distribution(cls, d: JointDistribution, n: int, **kw) -> "CascadeConfig":
        return cls.for_error_rate(d.crossover(), n, **kw)


@dataclass
class CascadeOutcome:
    corrected: np.ndarray
    transcript: Transcript
    residual_errors: int
    corrections: list[tuple[int, int, int]] = field(default_factory=list)
    """(pass, block, position) of every binary-search flip, in order."""


class _Pass:
    __slots__ = ("perm", "where", "k", "alice")

    def __init__(self, perm: np.ndarray, k: int, alice: np.ndarray):
        self.perm = perm
        self.k = k
        self.alice = alice
        self.where = np.empty_like(perm)
        self.where[perm] = np.arange(perm.size)

    def block(self, b: int) -> np.ndarray:
        return self.perm[b * self.k:(b + 1) * self.k]

    def block_of(self, pos: int) -> int:
        return int(self.where[pos]) // self.k


def _parities(bits: np.ndarray, perm: np.ndarray, k: int) -> np.ndarray:
    starts = np.arange(0, perm.size, k)
    return (np.add.reduceat(bits[perm].astype(np.int64), starts) & 1).astype(np.uint8)


def _binary_search(x, bob, idx: np.ndarray, t: Transcript) -> int:
    lo, hi = 0, idx.size
    while hi - lo > 1:
        mid = (lo + hi) // 2
        half = idx[lo:mid]
        pa = int(x[half].sum() & 1)
        pb = int(bob[half].sum() & 1)
        t.send(A2B, "subblock-parity", [pa], [half])
        t.send(B2A, "subblock-parity", [pb], [half])
        if pa != pb:
            hi = mid
        else:
            lo = mid
    return int(idx[lo])


def run(x, y, cfg: CascadeConfig) -> CascadeOutcome:
    """Reconcile Bob's ``y`` towards Alice's ``x``.

    ``x`` is only ever read through parities that are also written to the
    transcript; ``residual_errors`` is computed for the caller's benefit.
    """
    x = as_bits(x, name="x")
    y = as_bits(y, x.size, name="y")
    n = x.size
    bob = y.copy()
    t = Transcript()
    passes: list[_Pass] = []
    corrections: list[tuple[int, int, int]] = []

    def odd(q: int, b: int) -> bool:
        P = passes[q]
        return int(bob[P.block(b)].sum() & 1) != int(P.alice[b])

    for i in range(cfg.passes):
        k = cfg.block_size(i, n)
        perm = np.random.default_rng([cfg.shuffle_seed, i]).permutation(n)
        alice = _parities(x, perm, k)
        reply = _parities(bob, perm, k)
        P = _Pass(perm, k, alice)
        passes.append(P)
        blocks = [P.block(b) for b in range(alice.size)]
        t.send(A2B, "block-parity", alice, blocks)
        t.send(B2A, "block-parity", reply, blocks)

        heap = [(blocks[b].size, i, b) for b in np.flatnonzero(alice != reply).tolist()]
        heapq.heapify(heap)
        while heap:
            _, q, b = heapq.heappop(heap)
            if not odd(q, b):
                continue
            pos = _binary_search(x, bob, passes[q].block(b), t)
            bob[pos] ^= 1
            corrections.append((q, b, pos))
            for r in range(len(passes)):
                if r == q:
                    continue
                rb = passes[r].block_of(pos)
                if odd(r, rb):
                    heapq.heappush(heap, (passes[r].block(rb).size, r, rb))

    residual = int(np.count_nonzero(bob != x))
    return CascadeOutcome(bob, t, residual, corrections)
