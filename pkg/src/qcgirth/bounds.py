"""Certified girth thresholds derived from the column maxima of a shift matrix.

Two thresholds are computed from the stats of a canonical matrix:

* ``girth10_bound``: circulant sizes strictly above it give girth at least 10.
* ``girth12_bound``: the tight threshold for girth twelve. Provided some
  circulant size reaches girth twelve at all, every size strictly above the
  threshold does too, while the size meeting the threshold never does.

All arithmetic is exact (Python integers), so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .shift_matrix import ShiftMatrix, stats

# Labels for the six candidate terms, written in terms of the stats fields
# (r1 = row1_max, r2 = row2_max, d12 = diff12_max, d21 = diff21_max).
TERM_LABELS = (
    "2r1+d21",
    "2r2+d12",
    "r1+d12+2d21",
    "r2+2d12+d21",
    "r1+r2+d21",
    "r1+r2+d12",
)


@dataclass(frozen=True)
class TightBound:
    """The six threshold terms and the bounds they induce."""

    terms: tuple[int, int, int, int, int, int]
    girth12_bound: int  # max of the six terms
    girth10_bound: int

    @property
    def first_certified_size(self) -> int:
        """Smallest circulant size covered by the girth-12 guarantee."""
        return self.girth12_bound + 1


def bound_terms(st) -> tuple[int, int, int, int, int, int]:
    """The six candidate terms, in the order of TERM_LABELS."""
    r1, r2, d12, d21 = st.as_tuple()
    return (
        2 * r1 + d21,
        2 * r2 + d12,
        r1 + d12 + 2 * d21,
        r2 + 2 * d12 + d21,
        r1 + r2 + d21,
        r1 + r2 + d12,
    )


def tight_bound(matrix: ShiftMatrix) -> TightBound:
    """Compute the tight girth-12 threshold for a canonical shift matrix."""
    st = stats(matrix)
    terms = bound_terms(st)
    return TightBound(
        terms=terms,
        girth12_bound=max(terms),
        girth10_bound=girth10_bound(matrix),
    )


def girth10_bound(matrix: ShiftMatrix) -> int:
    """Threshold above which the girth is at least 10: twice the largest of
    row1_max, row2_max and diff12_max + diff21_max."""
    st = stats(matrix)
    return 2 * max(st.row1_max, st.row2_max, st.diff12_max + st.diff21_max)
