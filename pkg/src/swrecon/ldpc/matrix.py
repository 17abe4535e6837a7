"""Sparse binary parity-check matrices and GF(2) syndromes."""

from __future__ import annotations

import numpy as np


class MatrixError(ValueError):
    pass


class SparseParityMatrix:
    """An ``m x n`` binary matrix stored as both row and column adjacency.

    Rows are checks, columns are variables. Internally the row view is a CSR
    pair (``check_ptr``, ``check_var``) with variable indices sorted inside
    each row; the column view is the transposed CSR pair (``var_ptr``,
    ``var_check``). Edges are numbered in row-major order and ``var_edge``
    lists, per variable, the ids of its edges. Instances are treated as
    immutable; the arrays are flagged read-only.
    """

    def __init__(self, n: int, m: int, check_adjacency):
        n, m = int(n), int(m)
        if m < 1 or n < 1:
            raise MatrixError(f"dimensions must be positive, got m={m}, n={n}")
        if m >= n:
            raise MatrixError(f"need m < n for compression, got m={m}, n={n}")
        rows = [sorted(int(v) for v in row) for row in check_adjacency]
        if len(rows) != m:
            raise MatrixError(f"expected {m} rows, got {len(rows)}")
        for j, row in enumerate(rows):
            if not row:
                raise MatrixError(f"check {j} has no edges")
            if len(set(row)) != len(row):
                raise MatrixError(f"check {j} has duplicate edges")
            if row[0] < 0 or row[-1] >= n:
                raise MatrixError(f"check {j} references a variable outside [0, {n})")

        self.n = n
        self.m = m
        lengths = np.array([len(r) for r in rows], dtype=np.int64)
        self.check_ptr = np.concatenate(([0], np.cumsum(lengths))).astype(np.int64)
        self.check_var = np.fromiter((v for r in rows for v in r), dtype=np.int64,
                                     count=int(lengths.sum()))
        edge_check = np.repeat(np.arange(m, dtype=np.int64), lengths)

        order = np.argsort(self.check_var, kind="stable")
        counts = np.bincount(self.check_var, minlength=n)
        if np.any(counts == 0):
            raise MatrixError(f"variable {int(np.argmin(counts))} has no edges")
        self.var_ptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.var_edge = order.astype(np.int64)
        self.var_check = edge_check[order]
        self.edge_check = edge_check
        for arr in (self.check_ptr, self.check_var, self.var_ptr, self.var_edge,
                    self.var_check, self.edge_check):
            arr.flags.writeable = False

    @property
    def num_edges(self) -> int:
        return int(self.check_var.size)

    @property
    def rate(self) -> float:
        """Compression rate m/n."""
        return self.m / self.n

    @property
    def check_adjacency(self) -> list[list[int]]:
        return [self.check_var[a:b].tolist()
                for a, b in zip(self.check_ptr[:-1], self.check_ptr[1:])]

    @property
    def variable_adjacency(self) -> list[list[int]]:
        return [self.var_check[a:b].tolist()
                for a, b in zip(self.var_ptr[:-1], self.var_ptr[1:])]

    def check_degrees(self) -> np.ndarray:
        return np.diff(self.check_ptr)

    def var_degrees(self) -> np.ndarray:
        return np.diff(self.var_ptr)

    def to_dense(self) -> np.ndarray:
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        H[self.edge_check, self.check_var] = 1
        return H

    @classmethod
    def from_dense(cls, H) -> "SparseParityMatrix":
        H = np.asarray(H)
        if H.ndim != 2:
            raise MatrixError("dense matrix must be 2-D")
        if not np.isin(H, (0, 1)).all():
            raise MatrixError("dense matrix must be binary")
        m, n = H.shape
        return cls(n, m, [np.flatnonzero(row) for row in H])

    def __eq__(self, other):
        if not isinstance(other, SparseParityMatrix):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and np.array_equal(self.check_ptr, other.check_ptr)
                and np.array_equal(self.check_var, other.check_var))

    def __hash__(self):
        return hash((self.n, self.m, self.check_var.tobytes()))

    def __repr__(self):
        return f"SparseParityMatrix(m={self.m}, n={self.n}, edges={self.num_edges})"


def as_bits(x, length: int | None = None, name: str = "x") -> np.ndarray:
    """Validate a bit sequence and return it as a uint8 array."""
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D bit sequence")
    if arr.dtype != np.uint8:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name} must contain only 0 and 1")
        arr = arr.astype(np.uint8)
    elif arr.max() > 1:
        raise ValueError(f"{name} must contain only 0 and 1")
    if length is not None and arr.size != length:
        raise ValueError(f"{name} has length {arr.size}, expected {length}")
    return arr


def syndrome(M: SparseParityMatrix, x) -> np.ndarray:
    """``M x`` over GF(2): the XOR of ``x`` over each check's variables."""
    x = as_bits(x, M.n)
    return (np.add.reduceat(x[M.check_var].astype(np.int64), M.check_ptr[:-1]) & 1).astype(np.uint8)
