from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest

from conftest import make_matrix, random_canonical
from qcgirth import (
    ABOVE_CAP,
    BinaryParityMatrix,
    expand,
    export_alist,
    export_dense,
    parse_alist,
    qc_girth,
    tanner_girth,
)

STACKED_IDENTITY_ALIST = """\
4 6
3 2
3 3 3 3
2 2 2 2 2 2
1 3 5
2 4 6
1 3 5
2 4 6
1 3
2 4
1 3
2 4
1 3
2 4
"""


def _nx_graph(H: BinaryParityMatrix) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(("v", j) for j in range(H.n_cols))
    g.add_nodes_from(("c", i) for i in range(H.n_rows))
    for j, col in enumerate(H.col_rows):
        for r in col:
            g.add_edge(("v", j), ("c", r))
    return g


def _nx_girth(H: BinaryParityMatrix, cap: int = 12):
    g = nx.girth(_nx_graph(H))
    return ABOVE_CAP if g is math.inf or g > cap else int(g)


class TestExpand:
    def test_stacked_identities(self):
        H = expand(make_matrix([[0, 0], [0, 0], [0, 0]]), 2)
        assert (H.n_rows, H.n_cols) == (6, 4)
        assert H.col_rows == ((0, 2, 4), (1, 3, 5), (0, 2, 4), (1, 3, 5))

    def test_single_shift_block(self):
        H = expand(make_matrix([[0, 0], [0, 1], [0, 0]]), 3)
        # block (1,1) has ones at (r, (r+1) mod 3): column x holds row (x-1) mod 3
        for x in range(3):
            assert H.col_rows[3 + x] == tuple(
                sorted((x, 3 + (x - 1) % 3, 6 + x))
            )

    def test_example_matrix_dimensions(self, eq21):
        H = expand(eq21, 393)
        assert (H.n_rows, H.n_cols) == (1179, 2358)
        assert set(H.column_weights()) == {3}
        assert set(H.row_weights()) == {6}

    def test_regularity_random(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            width = int(rng.integers(2, 7))
            p = int(rng.integers(2, 30))
            m = random_canonical(rng, width, p)
            H = expand(m, p)
            assert set(H.column_weights()) == {3}
            assert set(H.row_weights()) == {width}

    def test_entry_not_below_size(self, eq21):
        with pytest.raises(ValueError, match="not below"):
            expand(eq21, 100)


class TestTannerGirth:
    def test_hand_built_six_cycle(self):
        H = BinaryParityMatrix(3, [(0, 2), (0, 1), (1, 2)])
        assert tanner_girth(H) == 6

    def test_four_cycle(self):
        H = expand(make_matrix([[0, 0], [0, 0], [0, 0]]), 5)
        assert tanner_girth(H) == 4

    def test_example_matrix(self, eq21):
        assert tanner_girth(expand(eq21, 393)) == 12
        assert tanner_girth(expand(eq21, 448)) == 8
        assert tanner_girth(expand(eq21, 448)) == qc_girth(eq21, 448)

    def test_tree_is_above_cap(self):
        H = BinaryParityMatrix(4, [(0, 1), (1, 2), (2, 3)])
        assert tanner_girth(H) is ABOVE_CAP

    def test_long_cycle_and_cap(self):
        # variables and checks alternating around a single 16-cycle
        cols = [(i, (i + 1) % 8) for i in range(8)]
        H = BinaryParityMatrix(8, cols)
        assert tanner_girth(H, cap=12) is ABOVE_CAP
        assert tanner_girth(H, cap=16) == 16

    def test_cap_validation(self):
        H = BinaryParityMatrix(3, [(0, 2), (0, 1), (1, 2)])
        with pytest.raises(ValueError, match="cap"):
            tanner_girth(H, cap=7)

    def test_matches_networkx_on_random_expansions(self):
        rng = np.random.default_rng(43)
        for _ in range(25):
            width = int(rng.integers(2, 6))
            p = int(rng.integers(2, 25))
            H = expand(random_canonical(rng, width, p), p)
            assert tanner_girth(H) == _nx_girth(H)

    def test_matches_networkx_on_random_irregular(self):
        rng = np.random.default_rng(47)
        for _ in range(40):
            n_rows = int(rng.integers(3, 12))
            n_cols = int(rng.integers(2, 14))
            cols = []
            for _ in range(n_cols):
                w = int(rng.integers(1, min(4, n_rows + 1)))
                cols.append(sorted(rng.choice(n_rows, size=w, replace=False).tolist()))
            H = BinaryParityMatrix(n_rows, cols)
            assert tanner_girth(H) == _nx_girth(H)

    def test_girth_invariant_under_cyclic_shift(self):
        rng = np.random.default_rng(53)
        for _ in range(10):
            width = int(rng.integers(2, 6))
            p = int(rng.integers(3, 20))
            m = random_canonical(rng, width, p)
            base = tanner_girth(expand(m, p))
            arr = m.to_array()
            u = int(rng.integers(0, 3))
            arr[u] = (arr[u] + int(rng.integers(1, p))) % p
            assert tanner_girth(expand(make_matrix(arr.tolist()), p)) == base
            arr = m.to_array()
            j = int(rng.integers(0, width))
            arr[:, j] = (arr[:, j] + int(rng.integers(1, p))) % p
            assert tanner_girth(expand(make_matrix(arr.tolist()), p)) == base


class TestAlist:
    def test_golden_stacked_identity(self):
        H = expand(make_matrix([[0, 0], [0, 0], [0, 0]]), 2)
        assert export_alist(H) == STACKED_IDENTITY_ALIST

    def test_round_trip_random(self):
        rng = np.random.default_rng(59)
        for _ in range(100):
            width = int(rng.integers(2, 7))
            p = int(rng.integers(2, 16))
            H = expand(random_canonical(rng, width, p), p)
            assert parse_alist(export_alist(H)) == H

    def test_round_trip_certified_expansion(self, eq21):
        H = expand(eq21, 449)
        again = parse_alist(export_alist(H))
        assert again == H
        assert export_alist(again) == export_alist(H)

    def test_parse_accepts_zero_padding(self):
        padded = """\
3 3
2 2
1 2 1
2 2 0
1 0
1 2
2 0
1 2
2 3
0 0
"""
        H = parse_alist(padded)
        assert H.col_rows == ((0,), (0, 1), (1,))
        assert H.row_weights() == (2, 2, 0)

    @pytest.mark.parametrize(
        "mutation, fragment",
        [
            (lambda t: t.replace("4 6", "4"), "dimensions"),
            (lambda t: t.replace("1 3 5", "1 3", 1), "expected 3"),
            (lambda t: t.replace("1 3 5", "1 3 9", 1), "out of range"),
            (lambda t: "\n".join(t.splitlines()[:6]) + "\n", "missing index lines"),
            (lambda t: t.replace("2 4 6", "2 4 x", 1), "non-integer"),
        ],
    )
    def test_parse_errors(self, mutation, fragment):
        with pytest.raises(ValueError, match=fragment):
            parse_alist(mutation(STACKED_IDENTITY_ALIST))

    def test_row_column_cross_check(self):
        bad = STACKED_IDENTITY_ALIST.replace("1 3\n2 4\n1 3\n2 4\n1 3\n2 4\n", "1 3\n2 4\n1 3\n2 4\n1 3\n2 3\n")
        with pytest.raises(ValueError, match="disagrees"):
            parse_alist(bad)


def test_export_dense():
    H = BinaryParityMatrix(3, [(0, 2), (0, 1), (1, 2)])
    assert export_dense(H) == "110\n011\n101\n"


def test_matrix_validation():
    with pytest.raises(ValueError, match="out of range"):
        BinaryParityMatrix(2, [(0, 2)])
    with pytest.raises(ValueError, match="duplicate"):
        BinaryParityMatrix(3, [(1, 1)])
