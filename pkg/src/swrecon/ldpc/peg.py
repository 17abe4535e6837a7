"""Progressive edge growth (PEG) construction of Tanner graphs.

Edges are added one variable at a time, each connecting to a check that is
as far as possible from the variable in the current graph. Among equally
distant checks the one with the smallest ``degree - target_degree`` wins
(plain lowest degree when check targets are uniform); remaining ties are
broken by a seeded RNG so the same seed always gives the same matrix.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from numba import njit

from .matrix import MatrixError, SparseParityMatrix


@njit(cache=True)
def _bucket_bump(c, key, order, pos, start):
    # move c from bucket key[c] to key[c] + 1; buckets are contiguous in order
    k = key[c]
    last = start[k + 1] - 1
    other = order[last]
    pc = pos[c]
    order[pc] = other
    pos[other] = pc
    order[last] = c
    pos[c] = last
    start[k + 1] = last
    key[c] = k + 1


@njit(cache=True)
def _pick_unmarked(order, start, nbuckets, chk_mark, stamp):
    # uniform among unmarked checks of the lowest non-exhausted bucket
    for k in range(nbuckets):
        a = start[k]
        b = start[k + 1]
        if a == b:
            continue
        for _ in range(16):
            c = order[a + np.random.randint(b - a)]
            if chk_mark[c] != stamp:
                return c
        cnt = 0
        for i in range(a, b):
            if chk_mark[order[i]] != stamp:
                cnt += 1
        if cnt == 0:
            continue
        r = np.random.randint(cnt)
        for i in range(a, b):
            c = order[i]
            if chk_mark[c] != stamp:
                if r == 0:
                    return c
                r -= 1
    return -1


@njit(cache=True)
def _pick_listed(cands, ncand, key):
    best = -1
    best_key = 1 << 30
    nties = 0
    for t in range(ncand):
        c = cands[t]
        k = key[c]
        if k < best_key:
            best_key = k
            best = c
            nties = 1
        elif k == best_key:
            nties += 1
            if np.random.randint(nties) == 0:
                best = c
    return best


@njit(cache=True)
def _peg_kernel(m, var_deg, chk_target, chk_cap, seed, max_depth):
    np.random.seed(seed)
    n = var_deg.size
    dv_max = var_deg.max()
    var_adj = np.full((n, dv_max), -1, np.int64)
    chk_adj = np.full((m, chk_cap), -1, np.int64)
    chk_deg = np.zeros(m, np.int64)
    chk_mark = np.zeros(m, np.int64)
    var_mark = np.zeros(n, np.int64)
    frontier = np.empty(m, np.int64)
    nxt = np.empty(m, np.int64)

    # selection key: degree minus target, so under-filled checks come first
    tmax = chk_target.max()
    key = tmax - chk_target
    nbuckets = tmax + chk_cap + 1
    order = np.argsort(key, kind="mergesort")
    pos = np.empty(m, np.int64)
    for i in range(m):
        pos[order[i]] = i
    start = np.zeros(nbuckets + 1, np.int64)
    for c in range(m):
        start[key[c] + 1] += 1
    for k in range(nbuckets):
        start[k + 1] += start[k]

    stamp = 0
    for v in range(n):
        for k in range(var_deg[v]):
            stamp += 1
            if k == 0:
                c = _pick_unmarked(order, start, nbuckets, chk_mark, stamp)
            else:
                var_mark[v] = stamp
                nf = 0
                for t in range(k):
                    c = var_adj[v, t]
                    chk_mark[c] = stamp
                    frontier[nf] = c
                    nf += 1
                reached = nf
                depth = 0
                c = -2
                while c == -2:
                    nn = 0
                    for f in range(nf):
                        cf = frontier[f]
                        for t in range(chk_deg[cf]):
                            u = chk_adj[cf, t]
                            if var_mark[u] == stamp:
                                continue
                            var_mark[u] = stamp
                            for s in range(dv_max):
                                c2 = var_adj[u, s]
                                if c2 < 0:
                                    break
                                if chk_mark[c2] != stamp:
                                    chk_mark[c2] = stamp
                                    nxt[nn] = c2
                                    nn += 1
                    depth += 1
                    if reached + nn == m and nn > 0:
                        # everything reachable: take the farthest layer
                        c = _pick_listed(nxt, nn, key)
                    elif nn == 0 or (max_depth >= 0 and depth >= max_depth):
                        # reach stopped growing or depth cap: take unreached checks
                        c = _pick_unmarked(order, start, nbuckets, chk_mark, stamp)
                    else:
                        reached += nn
                        for f in range(nn):
                            frontier[f] = nxt[f]
                        nf = nn
            if c < 0 or chk_deg[c] >= chk_cap or key[c] + 1 >= nbuckets:
                return var_adj, chk_adj, chk_deg, False
            var_adj[v, k] = c
            chk_adj[c, chk_deg[c]] = v
            chk_deg[c] += 1
            _bucket_bump(c, key, order, pos, start)
    return var_adj, chk_adj, chk_deg, True


def node_degree_counts(dist: Mapping[int, float], total: int) -> dict[int, int]:
    """Convert edge-perspective weights to integer node counts summing to ``total``.

    The node fraction of degree ``d`` is proportional to ``w_d / d``; rounding
    uses the largest-remainder rule.
    """
    items = sorted((int(d), float(w)) for d, w in dist.items() if w > 0)
    if not items or any(d < 1 for d, _ in items):
        raise MatrixError(f"invalid degree distribution {dict(dist)}")
    node = np.array([w / d for d, w in items])
    exact = total * node / node.sum()
    counts = np.floor(exact).astype(int)
    short = total - counts.sum()
    for idx in np.argsort(-(exact - counts), kind="stable")[:short]:
        counts[idx] += 1
    return {d: int(c) for (d, _), c in zip(items, counts) if c > 0}


def _check_targets(m: int, edges: int, check_dist: Mapping[int, float] | None) -> np.ndarray:
    if check_dist is None:
        base, extra = divmod(edges, m)
        return np.array([base + 1] * extra + [base] * (m - extra), dtype=np.int64)
    counts = node_degree_counts(check_dist, m)
    targets = np.array([d for d, c in sorted(counts.items()) for _ in range(c)], dtype=np.int64)
    # spread the edge-count mismatch one unit per check, lowest degrees first
    diff = edges - int(targets.sum())
    step = 1 if diff > 0 else -1
    idx = 0
    order = np.argsort(targets, kind="stable") if diff > 0 else np.argsort(-targets, kind="stable")
    while diff != 0:
        j = order[idx % m]
        if targets[j] + step >= 1:
            targets[j] += step
            diff -= step
        idx += 1
    return targets


def generate(n: int, m: int, var_degree_dist, check_degree_dist=None, seed: int = 0,
             max_depth: int | None = None) -> SparseParityMatrix:
    """Build an ``m x n`` matrix by progressive edge growth.

    Parameters
    ----------
    n, m : int
        Number of variables and checks.
    var_degree_dist : int, mapping or sequence
        An int gives a regular variable degree. A mapping ``{degree: weight}``
        is read as edge-perspective weights (lambda). A sequence of length
        ``n`` is taken as the explicit per-variable degree list.
    check_degree_dist : mapping, optional
        Edge-perspective check weights (rho) that set per-check target
        degrees. When omitted, check degrees are kept as equal as possible.
    seed : int
        Seed for tie-breaking.
    max_depth : int, optional
        Cap on the number of BFS expansion layers. ``None`` runs the exact
        PEG search, which costs O(edges) per edge; large graphs want a cap
        (any cap >= 1 still rules out 4-cycles while a non-adjacent check
        outside the 2-neighbourhood exists).
    """
    if not 0 < m < n:
        raise MatrixError(f"need 0 < m < n, got m={m}, n={n}")
    if isinstance(var_degree_dist, (int, np.integer)):
        var_deg = np.full(n, int(var_degree_dist), dtype=np.int64)
    elif isinstance(var_degree_dist, Mapping):
        counts = node_degree_counts(var_degree_dist, n)
        var_deg = np.array([d for d, c in sorted(counts.items()) for _ in range(c)], dtype=np.int64)
    else:
        var_deg = np.sort(np.asarray(var_degree_dist, dtype=np.int64))
        if var_deg.size != n:
            raise MatrixError(f"degree list has {var_deg.size} entries, expected {n}")
    if var_deg.min() < 1:
        raise MatrixError("variable degrees must be >= 1")
    if var_deg.max() > m:
        raise MatrixError(f"variable degree {var_deg.max()} exceeds the {m} available checks")
    edges = int(var_deg.sum())
    if edges < m:
        raise MatrixError(f"{edges} edges cannot cover {m} checks")
    targets = _check_targets(m, edges, check_degree_dist)
    if targets.max() > n:
        raise MatrixError(f"check degree {targets.max()} exceeds the {n} available variables")
    cap = int(targets.max() + var_deg.max() + 8)
    depth = -1 if max_depth is None else int(max_depth)
    _, chk_adj, chk_deg, ok = _peg_kernel(m, var_deg, targets, cap, int(seed) & 0xFFFFFFFF, depth)
    if not ok:
        raise MatrixError("PEG construction failed: check degrees overflowed")
    if np.any(chk_deg == 0):
        raise MatrixError("PEG left a check without edges; degree sequence infeasible")
    return SparseParityMatrix(n, m, [chk_adj[j, :chk_deg[j]] for j in range(m)])


def regular(n: int, dv: int, dc: int, seed: int = 0, max_depth: int | None = None) -> SparseParityMatrix:
    """(dv, dc)-regular PEG matrix with ``m = n dv / dc`` checks."""
    if (n * dv) % dc:
        raise MatrixError(f"n*dv = {n * dv} not divisible by dc = {dc}")
    return generate(n, n * dv // dc, dv, {dc: 1.0}, seed=seed, max_depth=max_depth)
