"""Ground truth: expand a shift matrix to its binary parity-check matrix,
measure Tanner-graph girth by breadth-first search, and read/write the alist
interchange format.

The BFS girth here is exact for any sparse binary matrix, not only expanded
quasi-cyclic ones, and serves as the independent oracle for the chain-based
engine.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .cycle_engine import ABOVE_CAP, GIRTH_CAP
from .shift_matrix import NUM_ROWS, ShiftMatrix


class BinaryParityMatrix:
    """Sparse binary matrix in column-major form.

    ``col_rows[j]`` is the sorted tuple of row indices holding a one in
    column j. Immutable after construction.
    """

    def __init__(self, n_rows: int, col_rows: Iterable[Iterable[int]]):
        if n_rows <= 0:
            raise ValueError("matrix must have at least one row")
        cols = []
        for j, rows in enumerate(col_rows):
            rows = sorted(int(r) for r in rows)
            for r in rows:
                if not 0 <= r < n_rows:
                    raise ValueError(f"row index {r} out of range in column {j}")
            if any(a == b for a, b in zip(rows, rows[1:])):
                raise ValueError(f"duplicate row index in column {j}")
            cols.append(tuple(rows))
        if not cols:
            raise ValueError("matrix must have at least one column")
        self._n_rows = n_rows
        self._col_rows = tuple(cols)

    @property
    def n_rows(self) -> int:
        return self._n_rows

    @property
    def n_cols(self) -> int:
        return len(self._col_rows)

    @property
    def col_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._col_rows

    @cached_property
    def row_cols(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self._n_rows)]
        for j, col in enumerate(self._col_rows):
            for r in col:
                rows[r].append(j)
        return tuple(tuple(r) for r in rows)

    def column_weights(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self._col_rows)

    def row_weights(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.row_cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryParityMatrix)
            and self._n_rows == other._n_rows
            and self._col_rows == other._col_rows
        )

    def __hash__(self) -> int:
        return hash((self._n_rows, self._col_rows))

    def __repr__(self) -> str:
        return f"<BinaryParityMatrix {self._n_rows}x{self.n_cols}>"


def expand(matrix: ShiftMatrix, size: int) -> BinaryParityMatrix:
    """Expand a shift matrix with circulant blocks of the given size.

    Block (u, v) is the size x size circulant permutation with a one at
    column (r + shift) mod size for each row r. The result has 3*size rows,
    L*size columns, column weight 3 and row weight L.
    """
    if size < 2:
        raise ValueError(f"circulant size must be at least 2, got {size}")
    if matrix.max_entry >= size:
        raise ValueError(
            f"entry {matrix.max_entry} is not below the circulant size {size}"
        )
    cols = []
    for v in range(matrix.num_columns):
        shifts = matrix.column(v)
        for x in range(size):
            cols.append(tuple(u * size + (x - shifts[u]) % size for u in range(NUM_ROWS)))
    return BinaryParityMatrix(NUM_ROWS * size, cols)


def tanner_girth(matrix: BinaryParityMatrix, cap: int = GIRTH_CAP):
    """Exact girth of the bipartite variable/check graph, up to ``cap``.

    Runs a breadth-first search from every variable node with parent-edge
    exclusion; the first level producing a non-tree edge yields the shortest
    cycle through that source. Returns ABOVE_CAP when every cycle (if any)
    is longer than the cap.
    """
    if cap < 4 or cap % 2:
        raise ValueError(f"cap must be an even integer >= 4, got {cap}")
    n = matrix.n_cols
    adjacency: list[list[int]] = [[n + r for r in col] for col in matrix.col_rows]
    adjacency.extend(list(cols) for cols in matrix.row_cols)
    total = n + matrix.n_rows
    mark = [-1] * total
    depth = [0] * total
    parent = [-1] * total
    best = cap + 2
    none_found = cap + 4
    for src in range(n):
        mark[src] = src
        depth[src] = 0
        parent[src] = -1
        frontier = [src]
        level = 0
        found = none_found
        # Expanding level d can only reveal cycles of length >= 2d + 2; once
        # a level produces any candidate, deeper levels cannot beat it.
        while frontier and 2 * level + 2 < best:
            nxt = []
            for u in frontier:
                pu = parent[u]
                du = depth[u]
                for w in adjacency[u]:
                    if w == pu:
                        continue
                    if mark[w] == src:
                        c = du + depth[w] + 1
                        if c < found:
                            found = c
                    else:
                        mark[w] = src
                        depth[w] = du + 1
                        parent[w] = u
                        nxt.append(w)
            if found < none_found:
                if found < best:
                    best = found
                break
            frontier = nxt
            level += 1
        if best == 4:
            break
    return best if best <= cap else ABOVE_CAP


def export_alist(matrix: BinaryParityMatrix) -> str:
    """Serialize to alist text (1-based indices, columns first, then rows)."""
    cw = matrix.column_weights()
    rw = matrix.row_weights()
    lines = [
        f"{matrix.n_cols} {matrix.n_rows}",
        f"{max(cw)} {max(rw)}",
        " ".join(str(w) for w in cw),
        " ".join(str(w) for w in rw),
    ]
    lines.extend(" ".join(str(r + 1) for r in col) for col in matrix.col_rows)
    lines.extend(" ".join(str(c + 1) for c in row) for row in matrix.row_cols)
    return "\n".join(lines) + "\n"


def _int_line(line: str, what: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise ValueError(f"malformed alist: non-integer token in {what}") from None


def parse_alist(text: str) -> BinaryParityMatrix:
    """Parse alist text back into a matrix.

    Index lines padded with trailing zeros (a common irregular-code
    convention) are accepted; the row lists are cross-checked against the
    column lists.
    """
    lines = text.splitlines()
    if len(lines) < 4:
        raise ValueError("malformed alist: fewer than 4 header lines")
    dims = _int_line(lines[0], "the dimensions line")
    if len(dims) != 2 or dims[0] <= 0 or dims[1] <= 0:
        raise ValueError("malformed alist: dimensions line must hold two positive integers")
    n_cols, n_rows = dims
    col_weights = _int_line(lines[2], "the column-weight line")
    row_weights = _int_line(lines[3], "the row-weight line")
    if len(col_weights) != n_cols or len(row_weights) != n_rows:
        raise ValueError("malformed alist: weight line lengths do not match dimensions")
    if len(lines) < 4 + n_cols + n_rows:
        raise ValueError("malformed alist: missing index lines")

    def indices(line: str, weight: int, what: str) -> list[int]:
        vals = _int_line(line, what)
        while len(vals) > weight and vals[-1] == 0:
            vals.pop()
        if len(vals) != weight:
            raise ValueError(f"malformed alist: {what} holds {len(vals)} indices, expected {weight}")
        return vals

    col_rows = []
    for j in range(n_cols):
        vals = indices(lines[4 + j], col_weights[j], f"column {j + 1}")
        if any(not 1 <= v <= n_rows for v in vals):
            raise ValueError(f"malformed alist: row index out of range in column {j + 1}")
        col_rows.append([v - 1 for v in vals])
    parsed = BinaryParityMatrix(n_rows, col_rows)
    for i in range(n_rows):
        vals = indices(lines[4 + n_cols + i], row_weights[i], f"row {i + 1}")
        if sorted(v - 1 for v in vals) != list(parsed.row_cols[i]):
            raise ValueError(f"malformed alist: row {i + 1} list disagrees with the column lists")
    return parsed


def export_dense(matrix: BinaryParityMatrix) -> str:
    """Debug format: one '0'/'1' string per matrix row."""
    out = []
    for cols in matrix.row_cols:
        row = ["0"] * matrix.n_cols
        for c in cols:
            row[c] = "1"
        out.append("".join(row))
    return "\n".join(out) + "\n"
