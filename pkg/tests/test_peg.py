import numpy as np
import pytest
import scipy.sparse as sp

from swrecon.ldpc import MatrixError, generate, regular
from swrecon.ldpc.peg import node_degree_counts


def four_cycles(M) -> int:
    """Pairs of variables sharing two or more checks, via the Gram matrix."""
    A = sp.csr_matrix((np.ones(M.num_edges), (M.edge_check, M.check_var)), shape=(M.m, M.n))
    G = (A.T @ A).tocoo()
    return int(np.sum((G.row < G.col) & (G.data > 1)))


def girth_bfs(M, limit=8) -> int:
    """Shortest cycle length through BFS from every variable (capped at ``limit``)."""
    var_adj = M.variable_adjacency
    chk_adj = M.check_adjacency
    best = limit + 2
    for root in range(M.n):
        # nodes: ('v', i) / ('c', j); track parent to skip the edge we came from
        dist = {("v", root): 0}
        parent = {("v", root): None}
        frontier = [("v", root)]
        while frontier:
            nxt = []
            for node in frontier:
                kind, idx = node
                nbrs = [("c", j) for j in var_adj[idx]] if kind == "v" else [("v", i) for i in chk_adj[idx]]
                for nb in nbrs:
                    if nb == parent[node]:
                        continue
                    if nb in dist:
                        best = min(best, dist[node] + dist[nb] + 1)
                    else:
                        dist[nb] = dist[node] + 1
                        parent[nb] = node
                        nxt.append(nb)
            frontier = [f for f in nxt if dist[f] < best // 2]
    return best


def test_small_structure():
    M = generate(6, 3, 2, {4: 1.0}, seed=0)
    assert (M.n, M.m) == (6, 3)
    assert M.var_degrees().tolist() == [2] * 6
    assert M.check_degrees().tolist() == [4, 4, 4]
    assert {(j, i) for j, r in enumerate(M.check_adjacency) for i in r} == \
        {(j, i) for i, c in enumerate(M.variable_adjacency) for j in c}


def test_regular_2000_has_girth_at_least_6(m36_2000):
    M = m36_2000
    assert M.var_degrees().tolist() == [3] * 2000
    assert four_cycles(M) == 0


def test_girth_oracles_agree_on_small_graph():
    M = regular(120, 3, 6, seed=3)
    assert four_cycles(M) == 0
    assert girth_bfs(M) >= 6


def test_bfs_oracle_detects_4_cycle():
    from swrecon.ldpc import SparseParityMatrix
    M = SparseParityMatrix(4, 2, [[0, 1, 2], [0, 1, 3]])
    assert girth_bfs(M) == 4
    assert four_cycles(M) == 1


def test_deterministic_given_seed():
    a = generate(300, 150, {2: 0.3, 3: 0.4, 6: 0.3}, seed=11)
    b = generate(300, 150, {2: 0.3, 3: 0.4, 6: 0.3}, seed=11)
    c = generate(300, 150, {2: 0.3, 3: 0.4, 6: 0.3}, seed=12)
    assert a == b
    assert a != c


def test_depth_capped_large_graph_is_4_cycle_free():
    M = regular(20_000, 3, 6, seed=5, max_depth=2)
    assert four_cycles(M) == 0
    assert np.all(M.check_degrees() == 6)


def test_irregular_degrees_follow_lambda():
    lam = {2: 0.25, 3: 0.45, 8: 0.30}
    counts = node_degree_counts(lam, 1000)
    assert sum(counts.values()) == 1000
    M = generate(1000, 450, lam, seed=1)
    got = np.bincount(M.var_degrees())
    for d, c in counts.items():
        assert got[d] == c


def test_infeasible_sequences():
    with pytest.raises(MatrixError):
        generate(10, 3, 4, seed=0)          # variable degree > m
    with pytest.raises(MatrixError):
        generate(10, 10, 2, seed=0)         # m >= n
    with pytest.raises(MatrixError):
        generate(10, 4, {0: 1.0}, seed=0)   # degree-0 variables
    with pytest.raises(MatrixError):
        generate(10, 4, [2] * 9, seed=0)    # degree list of the wrong length
