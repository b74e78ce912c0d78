"""Shift-matrix data model: parsing, validation, canonical form, column maxima.

A 3xL shift matrix assigns one circulant shift to each block of a (3,L)
quasi-cyclic parity-check matrix. The matrix carries plain nonnegative
integers with no attached modulus: the same matrix is reused for every
circulant size, which is the whole point of the consecutive-length analysis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

NUM_ROWS = 3


class DuplicateColumnWarning(UserWarning):
    """Two identical columns force 4-cycles at every circulant size."""


class ShiftMatrix:
    """Immutable 3xL matrix of nonnegative circulant shift values.

    Instances are plain values: hashable, comparable, and safe to share
    between threads or send to worker processes.
    """

    __slots__ = ("_entries",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        entries = tuple(tuple(self._as_int(x) for x in row) for row in rows)
        if len(entries) != NUM_ROWS:
            raise ValueError(f"expected {NUM_ROWS} rows, got {len(entries)}")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("ragged rows: all rows must have the same number of columns")
        if width < 2:
            raise ValueError(f"need at least 2 columns, got {width}")
        for row in entries:
            for x in row:
                if x < 0:
                    raise ValueError(f"negative entry {x}: shifts must be nonnegative")
        self._entries = entries
        cols = list(zip(*entries))
        if len(set(cols)) != width:
            warnings.warn(
                "duplicate columns force 4-cycles at every circulant size",
                DuplicateColumnWarning,
                stacklevel=2,
            )

    @staticmethod
    def _as_int(x) -> int:
        if isinstance(x, bool) or (not isinstance(x, (int, np.integer))):
            raise ValueError(f"non-integer entry {x!r}")
        return int(x)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._entries

    @property
    def num_columns(self) -> int:
        return len(self._entries[0])

    def row(self, u: int) -> tuple[int, ...]:
        return self._entries[u]

    def column(self, j: int) -> tuple[int, int, int]:
        return tuple(row[j] for row in self._entries)

    @property
    def max_entry(self) -> int:
        return max(max(row) for row in self._entries)

    def canonical_violation(self) -> str | None:
        """Name of the violated canonical-form predicate, or None if canonical."""
        if any(x != 0 for x in self._entries[0]):
            return "row 0 is not all zeros"
        if any(row[0] != 0 for row in self._entries):
            return "column 0 is not all zeros"
        return None

    @property
    def is_canonical(self) -> bool:
        return self.canonical_violation() is None

    def to_array(self) -> np.ndarray:
        return np.array(self._entries, dtype=np.int64)

    def serialize(self) -> str:
        """Text form: one line per row, single spaces, trailing newline."""
        return "".join(" ".join(str(x) for x in row) + "\n" for row in self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftMatrix) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"ShiftMatrix({[list(r) for r in self._entries]})"


def parse(text: str) -> ShiftMatrix:
    """Parse the shift-matrix text format.

    Lines starting with '#' are comments; blank lines are ignored. Exactly
    three data lines remain, each holding the same number of whitespace
    separated nonnegative decimal integers.
    """
    rows: list[list[int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        row = []
        for tok in line.split():
            if not tok.isdigit():
                if tok.lstrip("-").isdigit():
                    raise ValueError(f"negative entry {tok!r}: shifts must be nonnegative")
                raise ValueError(f"invalid token {tok!r}: expected a nonnegative decimal integer")
            row.append(int(tok))
        rows.append(row)
    if len(rows) != NUM_ROWS:
        raise ValueError(f"expected {NUM_ROWS} data rows, got {len(rows)}")
    return ShiftMatrix(rows)


def canonicalize(rows: ShiftMatrix | Sequence[Sequence[int]]) -> ShiftMatrix:
    """Bring a 3xL integer matrix into canonical form (zero row 0, zero column 0).

    Subtracts the row-0 entry from each column, then the column-0 entry from
    each row. These offsets telescope around every closed chain, so all cycle
    sums (and hence the girth at every circulant size) are preserved.

    Raises ValueError if the result has a negative entry: supply a nonnegative
    representative instead (the bound formulas require nonnegative shifts, and
    reducing modulo a circulant size would tie the matrix to that one size).
    """
    if isinstance(rows, ShiftMatrix):
        m = [list(r) for r in rows.entries]
    else:
        m = [[int(x) for x in r] for r in rows]
    if len(m) != NUM_ROWS:
        raise ValueError(f"expected {NUM_ROWS} rows, got {len(m)}")
    width = len(m[0])
    if any(len(r) != width for r in m) or width < 2:
        raise ValueError("rows must have equal length at least 2")
    for j in range(width):
        off = m[0][j]
        for u in range(NUM_ROWS):
            m[u][j] -= off
    for u in range(1, NUM_ROWS):
        off = m[u][0]
        for j in range(width):
            m[u][j] -= off
    low = min(min(r) for r in m)
    if low < 0:
        raise ValueError(
            "canonical form has a negative entry; supply a nonnegative "
            "representative of the matrix (offsets preserve all cycle sums)"
        )
    return ShiftMatrix(m)


@dataclass(frozen=True)
class BoundStats:
    """Column maxima of a canonical shift matrix.

    row1_max / row2_max are the largest entries of rows 1 and 2; diff12_max
    and diff21_max are the largest column-wise differences row1 - row2 and
    row2 - row1. Maxima range over all columns including column 0, so the
    difference maxima are never negative for a canonical matrix.
    """

    row1_max: int
    row2_max: int
    diff12_max: int
    diff21_max: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.row1_max, self.row2_max, self.diff12_max, self.diff21_max)


def stats(matrix: ShiftMatrix) -> BoundStats:
    """Compute the four column maxima. Requires canonical form."""
    violation = matrix.canonical_violation()
    if violation is not None:
        raise ValueError(f"shift matrix is not in canonical form: {violation}")
    r1, r2 = matrix.row(1), matrix.row(2)
    return BoundStats(
        row1_max=max(r1),
        row2_max=max(r2),
        diff12_max=max(a - b for a, b in zip(r1, r2)),
        diff21_max=max(b - a for a, b in zip(r1, r2)),
    )
