"""MacKay alist text format.

Layout::

    n m
    max_column_weight max_row_weight
    column weights (n values)
    row weights (m values)
    n lines: 1-based row indices of each column
    m lines: 1-based column indices of each row

Trailing zeros padding short lists are accepted on read and never written.
"""

from __future__ import annotations

from .matrix import MatrixError, SparseParityMatrix


class AlistError(MatrixError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def save_alist(M: SparseParityMatrix) -> str:
    cols = M.variable_adjacency
    rows = M.check_adjacency
    lines = [
        f"{M.n} {M.m}",
        f"{max(map(len, cols))} {max(map(len, rows))}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    lines += [" ".join(str(j + 1) for j in c) for c in cols]
    lines += [" ".join(str(i + 1) for i in r) for r in rows]
    return "\n".join(lines) + "\n"


def _ints(lineno: int, line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise AlistError(lineno, f"non-integer token in {line.strip()!r}") from None


def load_alist(text: str) -> SparseParityMatrix:
    # blank lines are skipped but line numbers refer to the original text
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if len(lines) < 4:
        raise AlistError(len(text.splitlines()), "truncated header")

    def take(k: int, what: str, count: int | None = None):
        if k >= len(lines):
            raise AlistError(lines[-1][0], f"missing {what}")
        lineno, line = lines[k]
        vals = _ints(lineno, line)
        if count is not None and len(vals) != count:
            raise AlistError(lineno, f"{what}: expected {count} values, got {len(vals)}")
        return lineno, vals

    ln, (n, m) = take(0, "dimensions", 2)
    if n <= 0 or m <= 0:
        raise AlistError(ln, f"non-positive dimensions n={n}, m={m}")
    ln_max, (max_col, max_row) = take(1, "maximum weights", 2)
    ln_cw, col_w = take(2, "column weights", n)
    ln_rw, row_w = take(3, "row weights", m)
    if max(col_w) != max_col or max(row_w) != max_row:
        raise AlistError(ln_max, "maximum weights disagree with weight lists")
    if sum(col_w) != sum(row_w):
        raise AlistError(ln_rw, f"column weights sum to {sum(col_w)}, row weights to {sum(row_w)}")

    def read_lists(start: int, count: int, weights, bound: int, what: str):
        out = []
        for k in range(count):
            lineno, vals = take(start + k, f"{what} {k + 1}")
            nz = [v for v in vals if v != 0]
            if vals[:len(nz)] != nz:
                raise AlistError(lineno, "zero padding must trail the indices")
            if len(nz) != weights[k]:
                raise AlistError(lineno, f"{what} {k + 1}: weight {weights[k]} declared, "
                                         f"{len(nz)} indices listed")
            if len(set(nz)) != len(nz):
                raise AlistError(lineno, f"duplicate entry in {what} {k + 1}")
            bad = [v for v in nz if not 1 <= v <= bound]
            if bad:
                raise AlistError(lineno, f"index {bad[0]} outside [1, {bound}]")
            out.append((lineno, [v - 1 for v in nz]))
        return out

    cols = read_lists(4, n, col_w, m, "column")
    rows = read_lists(4 + n, m, row_w, n, "row")
    if 4 + n + m < len(lines):
        raise AlistError(lines[4 + n + m][0], "unexpected trailing data")

    col_sets = [set(c) for _, c in cols]
    for j, (lineno, r) in enumerate(rows):
        for i in r:
            if j not in col_sets[i]:
                raise AlistError(lineno, f"row {j + 1} lists column {i + 1}, "
                                         f"which does not list row {j + 1}")
    return SparseParityMatrix(n, m, [r for _, r in rows])
