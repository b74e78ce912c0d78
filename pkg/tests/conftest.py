"""Shared fixtures and independent reference implementations.

The brute-force helpers here deliberately re-derive everything with plain
itertools loops so the vectorized engine is checked against a second,
unrelated code path.
"""

from __future__ import annotations

import itertools
import warnings

import numpy as np
import pytest

from qcgirth import DuplicateColumnWarning, ShiftMatrix, parse

EQ21_TEXT = "0 0 0 0 0 0\n0 3 14 18 24 26\n0 19 62 107 170 224\n"


@pytest.fixture
def eq21() -> ShiftMatrix:
    return parse(EQ21_TEXT)


def make_matrix(rows) -> ShiftMatrix:
    """Construct a matrix, ignoring the duplicate-column warning."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DuplicateColumnWarning)
        return ShiftMatrix(rows)


def random_canonical(rng: np.random.Generator, columns: int, bound: int) -> ShiftMatrix:
    """Canonical matrix with free entries uniform in [0, bound)."""
    state = np.zeros((3, columns), dtype=np.int64)
    state[1:, 1:] = rng.integers(0, bound, size=(2, columns - 1))
    return make_matrix(state.tolist())


def iter_closed(n: int, k: int):
    for seq in itertools.product(range(n), repeat=k):
        if all(seq[i] != seq[(i + 1) % k] for i in range(k)):
            yield seq


def brute_abs_sums(entries, k: int) -> set[int]:
    """All |chain sums| at half-length k, by exhaustive iteration."""
    width = len(entries[0])
    out = set()
    for cols in iter_closed(width, k):
        for rows in iter_closed(3, k):
            s = sum(
                entries[rows[i]][cols[i]] - entries[rows[(i + 1) % k]][cols[i]]
                for i in range(k)
            )
            out.add(abs(s))
    return out


def brute_zero_count(entries, k: int, modulus: int) -> int:
    """Number of chains at half-length k whose sum vanishes mod modulus."""
    width = len(entries[0])
    count = 0
    for cols in iter_closed(width, k):
        for rows in iter_closed(3, k):
            s = sum(
                entries[rows[i]][cols[i]] - entries[rows[(i + 1) % k]][cols[i]]
                for i in range(k)
            )
            count += s % modulus == 0
    return count


def brute_girth(entries, modulus: int):
    """Girth up to 12 via the brute-force sums, or None above the cap."""
    for k in range(2, 7):
        if any(v % modulus == 0 for v in brute_abs_sums(entries, k)):
            return 2 * k
    return None
