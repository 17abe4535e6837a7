"""Sum-product decoding of a syndrome over the Tanner graph.

This is the channel-decoding sum-product algorithm with two changes for
source coding with side information: variable priors come from
``P_{X|Y}`` and Bob's bits, and each check targets the parity announced in
the syndrome instead of zero. The latter is a sign flip ``(-1)**s_j`` on the
check-to-variable message.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..domain import LLR_MAX
from .matrix import SparseParityMatrix, as_bits, syndrome

MSG_CLIP = LLR_MAX
DEFAULT_MAX_ITERS = 200


@dataclass(frozen=True)
class DecodeResult:
    estimate: np.ndarray
    converged: bool
    iterations: int
    posterior: np.ndarray | None = None
    max_abs_message: float = 0.0


@njit(cache=True)
def _syndrome_ok(check_ptr, check_var, dec, s):
    m = s.size
    for j in range(m):
        acc = 0
        for e in range(check_ptr[j], check_ptr[j + 1]):
            acc ^= dec[check_var[e]]
        if acc != s[j]:
            return False
    return True


@njit(cache=True)
def _bp_kernel(check_ptr, check_var, var_ptr, var_edge, s, prior, max_iters, clip, early_stop):
    m = s.size
    n = prior.size
    E = check_var.size
    v2c = np.empty(E)
    c2v = np.zeros(E)
    post = prior.copy()
    dec = np.empty(n, np.uint8)
    for i in range(n):
        dec[i] = 1 if prior[i] < 0 else 0
    max_abs = 0.0
    for e in range(E):
        x = prior[check_var[e]]
        if x > clip:
            x = clip
        elif x < -clip:
            x = -clip
        v2c[e] = x
        if abs(x) > max_abs:
            max_abs = abs(x)
    if early_stop and _syndrome_ok(check_ptr, check_var, dec, s):
        return dec, True, 0, post, max_abs

    dc_max = 0
    for j in range(m):
        d = check_ptr[j + 1] - check_ptr[j]
        if d > dc_max:
            dc_max = d
    t = np.empty(dc_max)
    fwd = np.empty(dc_max + 1)
    bwd = np.empty(dc_max + 1)
    tmax = math.tanh(clip / 2.0)

    it = 0
    while it < max_iters:
        it += 1
        for j in range(m):
            a = check_ptr[j]
            d = check_ptr[j + 1] - a
            for k in range(d):
                t[k] = math.tanh(v2c[a + k] / 2.0)
            fwd[0] = 1.0
            for k in range(d):
                fwd[k + 1] = fwd[k] * t[k]
            bwd[d] = 1.0
            for k in range(d - 1, -1, -1):
                bwd[k] = bwd[k + 1] * t[k]
            sign = -1.0 if s[j] else 1.0
            for k in range(d):
                p = sign * fwd[k] * bwd[k + 1]
                if p > tmax:
                    p = tmax
                elif p < -tmax:
                    p = -tmax
                c2v[a + k] = 2.0 * math.atanh(p)
        for v in range(n):
            tot = prior[v]
            for q in range(var_ptr[v], var_ptr[v + 1]):
                tot += c2v[var_edge[q]]
            post[v] = tot
            dec[v] = 1 if tot < 0 else 0
            for q in range(var_ptr[v], var_ptr[v + 1]):
                e = var_edge[q]
                x = tot - c2v[e]
                if x > clip:
                    x = clip
                elif x < -clip:
                    x = -clip
                v2c[e] = x
                if abs(x) > max_abs:
                    max_abs = abs(x)
                if abs(c2v[e]) > max_abs:
                    max_abs = abs(c2v[e])
        if early_stop and _syndrome_ok(check_ptr, check_var, dec, s):
            return dec, True, it, post, max_abs
    return dec, _syndrome_ok(check_ptr, check_var, dec, s), it, post, max_abs


def decode(M: SparseParityMatrix, s, priors, max_iters: int = DEFAULT_MAX_ITERS,
           early_stop: bool = True) -> DecodeResult:
    """Flooding sum-product decoding of ``x`` from ``s = M x`` and prior LLRs.

    Before the first iteration the hard decision of the priors is tested
    against ``s``; a match returns with ``iterations == 0``. After each
    iteration the posterior hard decision is tested again, and decoding stops
    at the first match. Messages are clipped to +-25. With
    ``early_stop=False`` all ``max_iters`` iterations run and ``converged``
    reflects the final decision only.
    """
    s = as_bits(s, M.m, "syndrome")
    priors = np.asarray(priors, dtype=np.float64)
    if priors.shape != (M.n,):
        raise ValueError(f"priors must have shape ({M.n},), got {priors.shape}")
    if np.isnan(priors).any():
        raise ValueError("priors contain NaN")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    dec, ok, its, post, max_abs = _bp_kernel(
        M.check_ptr, M.check_var, M.var_ptr, M.var_edge, s, priors, int(max_iters), MSG_CLIP,
        bool(early_stop))
    return DecodeResult(dec, bool(ok), int(its), post, float(max_abs))


def verify(M: SparseParityMatrix, result: DecodeResult, s) -> bool:
    """Independent soundness check: ``converged`` implies ``M estimate == s``."""
    if not result.converged:
        return True
    return bool(np.array_equal(syndrome(M, result.estimate), as_bits(s, M.m, "syndrome")))


def decode_shortened(M: SparseParityMatrix, s, priors, revealed, x_revealed,
                     max_iters: int = DEFAULT_MAX_ITERS) -> DecodeResult:
    """Decode with some bits of ``x`` disclosed directly.

    Disclosed positions get certainty priors of +-LLR_MAX matching the
    announced bits; the matrix itself is untouched, so a single mother
    matrix serves every effective rate ``(m + len(revealed)) / n``.
    """
    revealed = np.asarray(revealed, dtype=np.int64)
    if revealed.size and (revealed.min() < 0 or revealed.max() >= M.n):
        raise IndexError(f"revealed positions must lie in [0, {M.n})")
    bits = np.asarray(x_revealed, dtype=np.uint8)
    if bits.shape != revealed.shape:
        raise ValueError("one disclosed bit per revealed position is required")
    pinned = np.array(priors, dtype=np.float64, copy=True)
    pinned[revealed] = np.where(bits == 1, -LLR_MAX, LLR_MAX)
    return decode(M, s, pinned, max_iters)
