"""Exhaustive maximum-likelihood syndrome decoding for tiny matrices."""

from __future__ import annotations

import numpy as np

from .matrix import SparseParityMatrix, as_bits

ML_MAX_N = 20


class InconsistentSyndromeError(ValueError):
    """No vector satisfies the requested syndrome (dependent rows)."""


def neg_log_likelihood(x, priors) -> float:
    """``sum_i x_i * prior_i``: negative log-likelihood up to a constant.

    With ``prior_i = ln P(x_i=0)/P(x_i=1)``, flipping bit ``i`` to 1
    multiplies the likelihood by ``exp(-prior_i)``.
    """
    x = np.asarray(x, dtype=np.float64)
    return float(np.dot(x, np.asarray(priors, dtype=np.float64)))


def decode_ml_bruteforce(M: SparseParityMatrix, s, priors, rtol: float = 1e-9) -> np.ndarray:
    """Most likely ``x`` with ``M x = s``, ties to the lexicographically smallest.

    All ``2**n`` vectors are enumerated with bit 0 as the most significant
    index bit, so the first minimiser in index order is the lexicographic
    minimum. Costs within ``rtol`` (relative to the largest |prior|) count
    as ties, absorbing summation-order rounding.
    """
    n, m = M.n, M.m
    if n > ML_MAX_N:
        raise ValueError(f"exhaustive search limited to n <= {ML_MAX_N}, got n={n}")
    s = as_bits(s, m, "syndrome")
    priors = np.asarray(priors, dtype=np.float64)
    if priors.shape != (n,):
        raise ValueError(f"priors must have shape ({n},)")

    col_mask = np.zeros(n, dtype=np.int64)
    for i, checks in enumerate(M.variable_adjacency):
        for j in checks:
            col_mask[i] |= 1 << j
    target = int(sum(int(b) << j for j, b in enumerate(s)))

    synd = np.zeros(1, dtype=np.int64)
    cost = np.zeros(1)
    # build index bits from least significant (x_{n-1}) up to x_0
    for i in range(n - 1, -1, -1):
        synd = np.concatenate((synd, synd ^ col_mask[i]))
        cost = np.concatenate((cost, cost + priors[i]))
    feasible = np.flatnonzero(synd == target)
    if feasible.size == 0:
        raise InconsistentSyndromeError("syndrome is not in the column space of M")
    c = cost[feasible]
    tol = rtol * max(1.0, float(np.abs(priors).max()) * n)
    idx = int(feasible[np.flatnonzero(c <= c.min() + tol)[0]])
    return np.array([(idx >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)
