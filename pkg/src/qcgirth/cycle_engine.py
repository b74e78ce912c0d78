"""Closed-chain enumeration: integer cycle-sum spectra and girth by divisibility.

A length-2k cycle in the Tanner graph of the expanded code corresponds to a
closed chain through the 3xL base matrix: column picks l_0..l_{k-1} and row
picks j_0..j_{k-1}, cyclically adjacent-distinct, whose alternating sum

    sum_i  S[j_i, l_i] - S[j_{i+1 mod k}, l_i]

vanishes modulo the circulant size P. The engine enumerates every chain once
over the integers and stores the set of achievable |sums| per half-length
(the "cycle spectrum"). Girth at any P then reduces to divisibility tests,
which makes certifying thousands of circulant sizes cheap. An integer sum of
exactly zero means the chain closes at every modulus.

Spectra are immutable and the functions here are pure; everything can be
shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .shift_matrix import ShiftMatrix, stats

MIN_HALF_LENGTH = 2
MAX_HALF_LENGTH = 6
GIRTH_CAP = 2 * MAX_HALF_LENGTH

# Chains per (row-sequence, column-chunk) block kept under ~2M int64 entries.
_CHUNK_TARGET = 1 << 21


class AboveCap:
    """Result marker: no cycle up to the requested cap (never a number)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (AboveCap, ())

    def __repr__(self) -> str:
        return "above_cap"


ABOVE_CAP = AboveCap()


@dataclass(frozen=True)
class Chain:
    """A closed chain: row and column index sequences of equal length k.

    Adjacent entries (cyclically) must differ in both sequences; rows are in
    {0,1,2} and k is between 2 and 6 (cycle lengths 4 to 12). Non-adjacent
    repeats are allowed.
    """

    rows: tuple[int, ...]
    columns: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        object.__setattr__(self, "columns", tuple(int(c) for c in self.columns))
        k = len(self.rows)
        if len(self.columns) != k:
            raise ValueError("rows and columns must have the same length")
        if not MIN_HALF_LENGTH <= k <= MAX_HALF_LENGTH:
            raise ValueError(f"half-length must be in [{MIN_HALF_LENGTH}, {MAX_HALF_LENGTH}], got {k}")
        for i in range(k):
            if self.rows[i] == self.rows[(i + 1) % k]:
                raise ValueError(f"adjacent rows equal at position {i}")
            if self.columns[i] == self.columns[(i + 1) % k]:
                raise ValueError(f"adjacent columns equal at position {i}")
        if any(not 0 <= r <= 2 for r in self.rows):
            raise ValueError("row indices must be in [0, 2]")
        if any(c < 0 for c in self.columns):
            raise ValueError("column indices must be nonnegative")

    @property
    def half_length(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return 2 * len(self.rows)

    def reversed(self) -> "Chain":
        """Traversal in the opposite direction; negates the chain sum."""
        k = len(self.rows)
        rows = tuple(self.rows[-i % k] for i in range(k))
        cols = tuple(self.columns[(-i - 1) % k] for i in range(k))
        return Chain(rows=rows, columns=cols)


def chain_sum(matrix: ShiftMatrix, chain: Chain) -> int:
    """Exact integer alternating sum of a chain over the shift matrix."""
    if max(chain.columns) >= matrix.num_columns:
        raise ValueError(
            f"column index {max(chain.columns)} out of range for a "
            f"{matrix.num_columns}-column matrix"
        )
    e = matrix.entries
    rows, cols, k = chain.rows, chain.columns, chain.half_length
    return sum(e[rows[i]][cols[i]] - e[rows[(i + 1) % k]][cols[i]] for i in range(k))


@dataclass(frozen=True)
class CycleWitness:
    """A concrete chain whose sum vanishes at the given modulus."""

    chain: Chain
    integer_sum: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.integer_sum % self.modulus != 0:
            raise ValueError("integer_sum is not divisible by the modulus")

    @property
    def cycle_length(self) -> int:
        return self.chain.length


@dataclass(frozen=True)
class CycleSpectrum:
    """Per half-length, the sorted set of achievable |chain sums|.

    A value of 0 (tracked by ``zero_sum``) means a cycle of that length
    exists at every circulant size.
    """

    values: dict[int, tuple[int, ...]]

    def half_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def zero_sum(self, half_length: int) -> bool:
        vs = self.values[half_length]
        return bool(vs) and vs[0] == 0

    def girth_at(self, modulus: int):
        """Smallest cycle length with a sum divisible by the modulus, else ABOVE_CAP."""
        if modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {modulus}")
        for k in self.half_lengths():
            if any(v % modulus == 0 for v in self.values[k]):
                return 2 * k
        return ABOVE_CAP

    def dump(self) -> str:
        """One line per half-length: "k: s1 s2 ..." with sums ascending."""
        return "".join(
            f"{k}:" + "".join(f" {v}" for v in self.values[k]) + "\n"
            for k in self.half_lengths()
        )


@lru_cache(maxsize=None)
def _closed_sequences(n_symbols: int, length: int) -> np.ndarray:
    """All index sequences over range(n_symbols) with cyclically-adjacent
    entries distinct, as an array of shape (count, length)."""
    if n_symbols < 2:
        return np.empty((0, length), dtype=np.int64)
    seqs = np.arange(n_symbols, dtype=np.int64).reshape(-1, 1)
    for _ in range(length - 1):
        ext = np.repeat(seqs, n_symbols, axis=0)
        new = np.tile(np.arange(n_symbols, dtype=np.int64), len(seqs)).reshape(-1, 1)
        keep = new[:, 0] != ext[:, -1]
        seqs = np.hstack([ext[keep], new[keep]])
    seqs = seqs[seqs[:, 0] != seqs[:, -1]]
    seqs.setflags(write=False)
    return seqs


@lru_cache(maxsize=None)
def _row_pair_indices(length: int) -> np.ndarray:
    """Row sequences encoded as consecutive ordered-pair indices 3*a + b."""
    rows = _closed_sequences(3, length)
    pairs = 3 * rows + np.roll(rows, -1, axis=1)
    pairs.setflags(write=False)
    return pairs


def _pair_differences(arr: np.ndarray) -> np.ndarray:
    """(9, L) array of row differences, indexed by ordered pair 3*a + b."""
    return (arr[:, None, :] - arr[None, :, :]).reshape(9, -1)


def _check_entry_magnitude(matrix: ShiftMatrix) -> None:
    # Sums of up to 6 differences must stay within exact int64 range.
    if matrix.max_entry > (1 << 59):
        raise ValueError("entries too large for 64-bit-checked cycle-sum arithmetic")


def _iter_chain_sums(arr: np.ndarray, half_length: int):
    """Yield (sums, col_offset) blocks; sums has shape (n_row_seqs, chunk)."""
    pairs = _row_pair_indices(half_length)
    cols = _closed_sequences(arr.shape[1], half_length)
    if len(pairs) == 0 or len(cols) == 0:
        return
    diffs = _pair_differences(arr)
    chunk = max(1, _CHUNK_TARGET // len(pairs))
    for lo in range(0, len(cols), chunk):
        block = cols[lo : lo + chunk]
        sums = np.zeros((len(pairs), len(block)), dtype=np.int64)
        for i in range(half_length):
            sums += diffs[pairs[:, i]][:, block[:, i]]
        yield sums, lo


def _validate_max_len(max_len: int) -> int:
    if max_len not in (4, 6, 8, 10, 12):
        raise ValueError(f"max_len must be one of 4, 6, 8, 10, 12; got {max_len}")
    return max_len // 2


@lru_cache(maxsize=64)
def _cached_spectrum(entries: tuple, max_half: int) -> CycleSpectrum:
    matrix = ShiftMatrix(entries)
    arr = matrix.to_array()
    values: dict[int, tuple[int, ...]] = {}
    bound_per_term = None
    if matrix.is_canonical:
        bound_per_term = sum(stats(matrix).as_tuple())
    for k in range(MIN_HALF_LENGTH, max_half + 1):
        parts = []
        for sums, _ in _iter_chain_sums(arr, k):
            part = np.unique(np.abs(sums))
            if bound_per_term is not None:
                assert part.size == 0 or part[-1] <= k * bound_per_term
            parts.append(part)
        merged = np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
        values[k] = tuple(int(v) for v in merged)
    return CycleSpectrum(values=values)


def cycle_spectrum(matrix: ShiftMatrix, max_len: int = GIRTH_CAP) -> CycleSpectrum:
    """Enumerate all chains up to the given cycle length and collect |sums|.

    The result depends only on the matrix (no modulus); compute it once and
    query any number of circulant sizes through ``girth_at``.
    """
    max_half = _validate_max_len(max_len)
    _check_entry_magnitude(matrix)
    return _cached_spectrum(matrix.entries, max_half)


def _require_reduced(matrix: ShiftMatrix, modulus: int) -> None:
    if modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus}")
    if matrix.max_entry >= modulus:
        raise ValueError(
            f"entry {matrix.max_entry} is not below the modulus {modulus}; "
            "reduce the matrix modulo the circulant size explicitly if that "
            "is intended"
        )


def qc_girth(matrix: ShiftMatrix, modulus: int, max_len: int = GIRTH_CAP):
    """Tanner-graph girth of the expansion at the given circulant size.

    Returns the girth as an even integer up to ``max_len``, or ABOVE_CAP when
    no chain sum is divisible. All entries must already lie below the modulus.
    """
    _require_reduced(matrix, modulus)
    return cycle_spectrum(matrix, max_len).girth_at(modulus)


def find_cycle(matrix: ShiftMatrix, modulus: int, length: int) -> CycleWitness | None:
    """First enumerated chain of the given cycle length closing at the modulus."""
    _require_reduced(matrix, modulus)
    half = _validate_max_len(length)
    if length != 2 * half:
        raise ValueError("cycle length must be even")
    _check_entry_magnitude(matrix)
    arr = matrix.to_array()
    cols = _closed_sequences(matrix.num_columns, half)
    rows = _closed_sequences(3, half)
    for sums, lo in _iter_chain_sums(arr, half):
        hits = np.flatnonzero((sums % modulus) == 0)
        if hits.size:
            r_idx, c_idx = divmod(int(hits[0]), sums.shape[1])
            chain = Chain(rows=tuple(rows[r_idx]), columns=tuple(cols[lo + c_idx]))
            return CycleWitness(
                chain=chain, integer_sum=chain_sum(matrix, chain), modulus=modulus
            )
    return None


def find_zero_sum_chain(matrix: ShiftMatrix, length: int) -> Chain | None:
    """A chain of the given cycle length whose integer sum is exactly zero
    (such a chain closes at every circulant size), or None."""
    half = _validate_max_len(length)
    _check_entry_magnitude(matrix)
    arr = matrix.to_array()
    cols = _closed_sequences(matrix.num_columns, half)
    rows = _closed_sequences(3, half)
    for sums, lo in _iter_chain_sums(arr, half):
        hits = np.flatnonzero(sums == 0)
        if hits.size:
            r_idx, c_idx = divmod(int(hits[0]), sums.shape[1])
            return Chain(rows=tuple(rows[r_idx]), columns=tuple(cols[lo + c_idx]))
    return None
