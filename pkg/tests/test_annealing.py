from __future__ import annotations

import numpy as np
import pytest

from conftest import brute_zero_count, make_matrix, random_canonical
from qcgirth import (
    DEFAULT_WEIGHTS,
    SearchConfig,
    cost,
    load_search_config,
    qc_girth,
    sa_search,
    sa_search_parallel,
)


class TestCost:
    def test_girth12_state_has_zero_cost(self, eq21):
        assert cost(eq21, 393) == 0.0

    def test_zero_matrix_positive(self):
        m = make_matrix([[0, 0], [0, 0], [0, 0]])
        assert cost(m, 7) > 0

    def test_matches_brute_force_counts(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            width = int(rng.integers(2, 5))
            q = int(rng.integers(3, 25))
            m = random_canonical(rng, width, q)
            expected = sum(
                DEFAULT_WEIGHTS[2 * k] * brute_zero_count(m.entries, k, q)
                for k in (2, 3, 4, 5)
            )
            assert cost(m, q) == expected

    def test_removing_only_divisible_value_lowers_cost(self):
        # the doubled row-2 climb sums to 10 and is the only closing chain
        # at modulus 10; lowering the entry removes it
        with_cycle = make_matrix([[0, 0], [0, 1], [0, 5]])
        without = make_matrix([[0, 0], [0, 1], [0, 4]])
        assert cost(with_cycle, 10) > cost(without, 10)
        assert cost(without, 10) == 0.0

    def test_entry_validation(self, eq21):
        with pytest.raises(ValueError, match="not below"):
            cost(eq21, 100)

    def test_weight_validation(self, eq21):
        with pytest.raises(ValueError, match="cycle lengths"):
            cost(eq21, 393, {5: 1.0})
        with pytest.raises(ValueError, match="positive"):
            cost(eq21, 393, {4: -1.0})


class TestSearch:
    def test_reproducible(self):
        cfg = SearchConfig(columns=3, modulus=30, seed=1, max_iters=3000)
        first = sa_search(cfg)
        second = sa_search(cfg)
        assert first.matrix == second.matrix
        assert first.iterations_used == second.iterations_used
        assert first.final_cost == second.final_cost

    def test_small_target_succeeds(self):
        result = sa_search(SearchConfig(columns=3, modulus=30, seed=1))
        assert result.success
        assert result.girth12_modulus == 30
        assert qc_girth(result.matrix, 30) == 12
        assert result.certificate is not None and result.certificate.passed
        assert result.girth12_bound == result.certificate.girth12_bound

    def test_impossible_target_fails_quietly(self):
        # no 3x6 matrix reaches girth 12 at modulus 7 (exhaustively checked)
        result = sa_search(SearchConfig(columns=6, modulus=7, seed=0, max_iters=2000))
        assert not result.success
        assert result.final_cost > 0
        assert result.certificate is None

    def test_trace_recording(self):
        cfg = SearchConfig(columns=3, modulus=30, seed=5, max_iters=500, record_trace=True)
        result = sa_search(cfg)
        assert result.trace is not None
        assert len(result.trace) <= 500
        no_trace = sa_search(SearchConfig(columns=3, modulus=30, seed=5, max_iters=500))
        assert no_trace.trace is None

    def test_minimize_bound_keeps_success_and_improves(self):
        base = sa_search(SearchConfig(columns=3, modulus=30, seed=1))
        assert base.success
        tuned = sa_search(
            SearchConfig(columns=3, modulus=30, seed=1, max_iters=30000, minimize_bound=True)
        )
        assert tuned.success
        assert tuned.girth12_bound <= base.girth12_bound
        assert qc_girth(tuned.matrix, 30) == 12

    def test_parallel_merge_prefers_lowest_successful_seed(self):
        cfg = SearchConfig(columns=3, modulus=30, seed=0, max_iters=25000)
        merged = sa_search_parallel(cfg, 3, max_workers=2)
        singles = [
            sa_search(SearchConfig(columns=3, modulus=30, seed=s, max_iters=25000))
            for s in range(3)
        ]
        winners = [r for r in singles if r.success]
        assert merged.success == bool(winners)
        if winners:
            expected = min(winners, key=lambda r: r.seed)
            assert merged.seed == expected.seed
            assert merged.matrix == expected.matrix

    def test_config_validation(self):
        with pytest.raises(ValueError, match="cooling_rate"):
            SearchConfig(columns=3, modulus=30, cooling_rate=1.5)
        with pytest.raises(ValueError, match="at least 2"):
            SearchConfig(columns=3, modulus=1)
        with pytest.raises(ValueError, match="columns"):
            SearchConfig(columns=1, modulus=30)


class TestConfigFile:
    def test_full_round_trip(self):
        text = """
        # search settings
        columns = 6
        modulus = 393
        max_iters = 1000
        initial_temperature = 5.0
        cooling_rate = 0.999
        seed = 42
        minimize_bound = true
        record_trace = false
        weight_4 = 500
        weight_6 = 50
        weight_8 = 5
        weight_10 = 0.5
        """
        cfg = load_search_config(text)
        assert cfg.columns == 6
        assert cfg.modulus == 393
        assert cfg.max_iters == 1000
        assert cfg.initial_temperature == 5.0
        assert cfg.cooling_rate == 0.999
        assert cfg.seed == 42
        assert cfg.minimize_bound is True
        assert dict(cfg.cost_weights) == {4: 500.0, 6: 50.0, 8: 5.0, 10: 0.5}

    def test_defaults_applied(self):
        cfg = load_search_config("columns = 4\nmodulus = 50\n")
        assert cfg.max_iters == 200_000
        assert cfg.initial_temperature == 10.0
        assert cfg.cooling_rate == 0.9995
        assert cfg.seed == 0
        assert cfg.minimize_bound is False
        assert dict(cfg.cost_weights) == dict(DEFAULT_WEIGHTS)

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("modulus = 50", "missing required config key 'columns'"),
            ("columns = 4", "missing required config key 'modulus'"),
            ("columns = 4\nmodulus = 50\nbogus = 1", "unknown config keys"),
            ("columns = 4\nmodulus = 50\ncolumns = 5", "duplicate"),
            ("columns four\nmodulus = 50", "expected 'key = value'"),
            ("columns = x\nmodulus = 50", "bad value"),
            ("columns = 4\nmodulus = 50\nminimize_bound = maybe", "bad value"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(ValueError, match=fragment):
            load_search_config(text)
