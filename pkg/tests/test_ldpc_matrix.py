import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swrecon.ldpc import (AlistError, MatrixError, SparseParityMatrix, generate, load_alist,
                          save_alist, syndrome)

# rows {0,1,3}, {1,2,4}, {0,2,5}; columns 3..5 are zero-padded to width 2
HAND_ALIST = """6 3
2 3
2 2 2 1 1 1
3 3 3
1 3
1 2
2 3
1 0
2 0
3 0
1 2 4
2 3 5
1 3 6
"""


def test_hand_alist_matches_transcription():
    M = load_alist(HAND_ALIST)
    assert (M.n, M.m) == (6, 3)
    assert M.check_adjacency == [[0, 1, 3], [1, 2, 4], [0, 2, 5]]
    assert M.variable_adjacency == [[0, 2], [0, 1], [1, 2], [0], [1], [2]]


def test_alist_write_never_pads():
    M = load_alist(HAND_ALIST)
    text = save_alist(M)
    assert " 0" not in text.replace("\n", " \n")
    assert load_alist(text) == M


def test_syndrome_hand_example():
    M = SparseParityMatrix(3, 2, [[0, 1], [1, 2]])
    assert syndrome(M, [1, 0, 1]).tolist() == [1, 1]
    assert syndrome(M, [0, 0, 0]).tolist() == [0, 0]


def test_syndrome_matches_dense_product():
    M = generate(60, 30, 3, seed=4)
    rng = np.random.default_rng(0)
    H = M.to_dense().astype(np.int64)
    for _ in range(20):
        x = rng.integers(0, 2, 60)
        assert np.array_equal(syndrome(M, x), (H @ x) % 2)


def test_syndrome_rejects_length():
    M = SparseParityMatrix(3, 2, [[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        syndrome(M, [1, 0])
    with pytest.raises(ValueError):
        syndrome(M, [1, 0, 2])


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_syndrome_linearity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(8, 60))
    m = int(rng.integers(2, n // 2 + 1))
    M = generate(n, m, 2, seed=seed)
    x, x2 = rng.integers(0, 2, (2, n)).astype(np.uint8)
    assert np.array_equal(syndrome(M, x ^ x2), syndrome(M, x) ^ syndrome(M, x2))


def test_views_are_transposes():
    M = generate(40, 20, {2: 0.3, 3: 0.7}, seed=9)
    pairs_r = {(j, i) for j, row in enumerate(M.check_adjacency) for i in row}
    pairs_c = {(j, i) for i, col in enumerate(M.variable_adjacency) for j in col}
    assert pairs_r == pairs_c
    assert M.num_edges == len(pairs_r)


@pytest.mark.parametrize("rows,n,m", [
    ([[0, 1], [1, 1]], 3, 2),   # duplicate edge
    ([[0, 1], []], 3, 2),       # empty row
    ([[0, 1], [1, 5]], 3, 2),   # out of range
    ([[0], [1], [2]], 3, 3),    # m >= n
    ([[0, 1], [0, 1]], 3, 2),   # column 2 empty
])
def test_matrix_invariants_rejected(rows, n, m):
    with pytest.raises(MatrixError):
        SparseParityMatrix(n, m, rows)


def _replace_line(text, lineno, new):
    lines = text.splitlines()
    lines[lineno - 1] = new
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("lineno,new,fragment", [
    (11, "1 2 7", "line 11"),            # column index > n
    (3, "2 2 2 1 1", "line 3"),         # short weight list
    (11, "1 1 4", "line 11"),           # duplicate entry
    (13, "1 2 6", "line 13"),           # row lists column 2, which does not list row 3
    (5, "1 x", "line 5"),               # non-integer
])
def test_alist_parse_errors_carry_line_numbers(lineno, new, fragment):
    with pytest.raises(AlistError, match=fragment):
        load_alist(_replace_line(HAND_ALIST, lineno, new))


def test_alist_truncated():
    with pytest.raises(AlistError):
        load_alist("6 3\n2 3\n")
    with pytest.raises(AlistError):
        load_alist("\n".join(HAND_ALIST.splitlines()[:-1]))


def test_alist_roundtrip_generated():
    for seed in range(5):
        M = generate(50, 20, {2: 0.2, 3: 0.5, 5: 0.3}, seed=seed)
        text = save_alist(M)
        M2 = load_alist(text)
        assert M2 == M
        assert save_alist(M2) == text


def test_dense_roundtrip():
    M = generate(30, 12, 3, seed=2)
    assert SparseParityMatrix.from_dense(M.to_dense()) == M
