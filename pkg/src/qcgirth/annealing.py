"""Simulated-annealing search for girth-12 shift matrices.

The state is a canonical 3xL matrix; only rows 1-2 of columns 1..L-1 move.
The objective counts chains of length 4..10 whose sum vanishes at the working
modulus, weighted so that shorter cycles dominate; zero cost means girth
twelve. Chain residues are maintained incrementally: each free entry has a
precomputed coefficient per chain, so a single-entry move touches only the
chains through that column (a numba kernel when available, numpy otherwise).

Runs are reproducible: identical configs (including the seed) give identical
results. Parallel variant: independent chains with consecutive seeds, merged
deterministically (lowest successful seed wins).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .cycle_engine import GIRTH_CAP, _closed_sequences, _row_pair_indices, qc_girth
from .expansion import expand, tanner_girth
from .shift_matrix import ShiftMatrix
from .verifier import CertificationReport, certify

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

DEFAULT_WEIGHTS: Mapping[int, float] = {4: 1000.0, 6: 100.0, 8: 10.0, 10: 1.0}

# Beyond this many chain/entry coefficient values the incremental model is
# not built and every candidate move re-evaluates from scratch.
_MODEL_BUDGET = 64_000_000

_CERTIFY_MARGIN = 50


def _apply_delta_numpy(res, idx, val, dvtab, modulus):
    """Shift the touched residues by dvtab[val] mod modulus; return the
    change in the number of zero residues."""
    x = res[idx]
    before = np.count_nonzero(x == 0)
    x += dvtab[val + 5]
    x[x >= modulus] -= modulus
    res[idx] = x
    return int(np.count_nonzero(x == 0)) - int(before)


if numba is not None:

    @numba.njit(cache=True)
    def _apply_delta_jit(res, idx, val, dvtab, modulus):  # pragma: no cover - jit
        dcnt = 0
        for j in range(idx.size):
            i = idx[j]
            x = res[i]
            if x == 0:
                dcnt -= 1
            x += dvtab[val[j] + 5]
            if x >= modulus:
                x -= modulus
            res[i] = x
            if x == 0:
                dcnt += 1
        return dcnt

    _apply_delta = _apply_delta_jit
else:
    _apply_delta = _apply_delta_numpy


def _normalize_weights(weights) -> tuple[tuple[int, float], ...]:
    items = dict(weights)
    if set(items) - {4, 6, 8, 10}:
        raise ValueError("cost weights must be keyed by cycle lengths 4, 6, 8, 10")
    if any(w <= 0 for w in items.values()):
        raise ValueError("cost weights must be positive")
    full = dict(DEFAULT_WEIGHTS)
    full.update(items)
    return tuple(sorted((k, float(v)) for k, v in full.items()))


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one annealing run."""

    columns: int
    modulus: int
    max_iters: int = 200_000
    initial_temperature: float = 10.0
    cooling_rate: float = 0.9995
    seed: int = 0
    cost_weights: tuple[tuple[int, float], ...] = field(
        default_factory=lambda: _normalize_weights(DEFAULT_WEIGHTS)
    )
    min_temperature: float = 0.0
    minimize_bound: bool = False
    record_trace: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cost_weights", _normalize_weights(dict(self.cost_weights)))
        if self.columns < 2:
            raise ValueError("need at least 2 columns")
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.max_iters <= 0 or self.initial_temperature <= 0:
            raise ValueError("max_iters and initial_temperature must be positive")
        if self.min_temperature < 0:
            raise ValueError("min_temperature must be nonnegative")
        if not 0 < self.cooling_rate < 1:
            raise ValueError("cooling_rate must be in (0, 1)")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a run; ``girth12_modulus`` is set only on success."""

    matrix: ShiftMatrix
    girth12_modulus: int | None
    girth12_bound: int
    iterations_used: int
    seed: int
    final_cost: float
    trace: tuple[float, ...] | None = None
    certificate: CertificationReport | None = None

    @property
    def success(self) -> bool:
        return self.girth12_modulus is not None


_CONFIG_BOOL = {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}


def load_search_config(text: str) -> SearchConfig:
    """Parse "key = value" config text; missing keys take their defaults.

    Keys: columns, modulus (required), max_iters, initial_temperature,
    cooling_rate, min_temperature, seed, minimize_bound, record_trace,
    weight_4, weight_6, weight_8, weight_10. '#' starts a comment.
    """
    values: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line {raw!r}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ValueError(f"duplicate config key {key!r}")
        values[key] = val

    def take(key, conv, default=None):
        if key not in values:
            if default is None and key in ("columns", "modulus"):
                raise ValueError(f"missing required config key {key!r}")
            return default
        try:
            return conv(values.pop(key))
        except ValueError:
            raise ValueError(f"bad value for config key {key!r}") from None

    def boolean(s):
        try:
            return _CONFIG_BOOL[s.lower()]
        except KeyError:
            raise ValueError(s) from None

    kwargs = dict(
        columns=take("columns", int),
        modulus=take("modulus", int),
        max_iters=take("max_iters", int, SearchConfig.max_iters),
        initial_temperature=take("initial_temperature", float, SearchConfig.initial_temperature),
        cooling_rate=take("cooling_rate", float, SearchConfig.cooling_rate),
        min_temperature=take("min_temperature", float, SearchConfig.min_temperature),
        seed=take("seed", int, SearchConfig.seed),
        minimize_bound=take("minimize_bound", boolean, SearchConfig.minimize_bound),
        record_trace=take("record_trace", boolean, SearchConfig.record_trace),
    )
    weights = dict(DEFAULT_WEIGHTS)
    for length in (4, 6, 8, 10):
        key = f"weight_{length}"
        if key in values:
            weights[length] = take(key, float)
    if values:
        raise ValueError(f"unknown config keys: {', '.join(sorted(values))}")
    return SearchConfig(cost_weights=_normalize_weights(weights), **kwargs)


class _ChainModel:
    """Precomputed chain structure for cycle lengths 4..10 at a fixed L.

    For every free entry (u, v) and half-length k, ``support[(u, v)][k]``
    holds the chains whose sum depends on that entry, as (positions,
    coefficients); the coefficient of an entry in a chain sum is a small
    integer in [-k, k].
    """

    def __init__(self, columns: int):
        self.columns = columns
        self.halves = (2, 3, 4, 5)
        self.row_pairs = {k: _row_pair_indices(k) for k in self.halves}
        self.col_seqs = {k: _closed_sequences(columns, k) for k in self.halves}
        self.chain_count = sum(
            len(self.row_pairs[k]) * len(self.col_seqs[k]) for k in self.halves
        )
        self.free = [(u, v) for u in (1, 2) for v in range(1, columns)]
        self.incremental = self.chain_count * len(self.free) <= _MODEL_BUDGET
        self.support: dict[tuple[int, int], dict[int, tuple[np.ndarray, np.ndarray]]] = {}
        if not self.incremental:
            return
        for u, v in self.free:
            per_k = {}
            for k in self.halves:
                rows = self.row_pairs[k]  # consecutive row pairs encoded 3*a + b
                cols = self.col_seqs[k]
                acc = np.zeros((len(rows), len(cols)), dtype=np.int8)
                for i in range(k):
                    colmask = cols[:, i] == v
                    if not colmask.any():
                        continue
                    headmask = (rows[:, i] // 3) == u
                    tailmask = (rows[:, i] % 3) == u
                    rowcoef = headmask.astype(np.int8) - tailmask.astype(np.int8)
                    acc += rowcoef[:, None] * colmask[None, :].astype(np.int8)
                flat = acc.reshape(-1)
                idx = np.flatnonzero(flat).astype(np.int64)
                per_k[k] = (idx, flat[idx])
            self.support[(u, v)] = per_k

    def sums(self, arr: np.ndarray) -> dict[int, np.ndarray]:
        diffs = (arr[:, None, :] - arr[None, :, :]).reshape(9, -1)
        out = {}
        for k in self.halves:
            rows = self.row_pairs[k]
            cols = self.col_seqs[k]
            acc = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for i in range(k):
                acc += diffs[rows[:, i]][:, cols[:, i]]
            out[k] = acc.reshape(-1)
        return out

    def residues(self, arr: np.ndarray, modulus: int) -> dict[int, np.ndarray]:
        return {k: s % modulus for k, s in self.sums(arr).items()}

    def zero_counts(self, residues: dict[int, np.ndarray]) -> dict[int, int]:
        return {k: int(np.count_nonzero(residues[k] == 0)) for k in self.halves}


_MODELS: dict[int, _ChainModel] = {}


def _model(columns: int) -> _ChainModel:
    model = _MODELS.get(columns)
    if model is None:
        model = _MODELS[columns] = _ChainModel(columns)
    return model


def _weighted(counts: dict[int, int], weights: tuple[tuple[int, float], ...]) -> float:
    by_length = dict(weights)
    return sum(by_length[2 * k] * c for k, c in counts.items())


def cost(matrix: ShiftMatrix, modulus: int, weights=DEFAULT_WEIGHTS) -> float:
    """Weighted count of chains of length 4..10 closing at the modulus.

    Zero exactly when the girth at the modulus is twelve. Chains are counted
    with multiplicity (every ordered traversal), which keeps the objective
    smooth under single-entry moves.
    """
    if matrix.max_entry >= modulus:
        raise ValueError(f"entry {matrix.max_entry} is not below the modulus {modulus}")
    model = _model(matrix.num_columns)
    counts = model.zero_counts(model.residues(matrix.to_array(), modulus))
    return _weighted(counts, _normalize_weights(weights))


def _bound_of(arr: np.ndarray) -> int:
    r1, r2 = arr[1], arr[2]
    a = int(r1.max())
    b = int(r2.max())
    c = int((r1 - r2).max())
    d = int((r2 - r1).max())
    return max(2 * a + d, 2 * b + c, a + c + 2 * d, b + 2 * c + d, a + b + d, a + b + c)


def sa_search(config: SearchConfig) -> SearchResult:
    """One annealing run.

    Metropolis acceptance over single-entry moves with geometric cooling.
    Without ``minimize_bound`` the run stops at the first zero-cost state;
    with it, the run keeps going, minimizing the girth-12 threshold among
    zero-cost states. Successes are re-verified against both the chain
    engine and the BFS oracle, and a certificate is attached.
    """
    rng = np.random.default_rng(config.seed)
    model = _model(config.columns)
    q = config.modulus
    weights = dict(config.cost_weights)
    n_free = len(model.free)

    state = np.zeros((3, config.columns), dtype=np.int64)
    state[1:, 1:] = rng.integers(0, q, size=(2, config.columns - 1))
    res = model.residues(state, q)
    counts = model.zero_counts(res)
    current_cost = sum(weights[2 * k] * c for k, c in counts.items())

    best_state = state.copy()
    best_cost = current_cost
    best_bound = _bound_of(state)
    trace: list[float] | None = [] if config.record_trace else None
    iterations = 0
    temperature = config.initial_temperature
    dvtab = np.zeros(11, dtype=np.int64)

    def shift_residues(u, v, dv):
        """Move entry (u, v) by dv (mod q) through all touched chains;
        update counts in place."""
        for c in range(-5, 6):
            dvtab[c + 5] = (dv * c) % q
        for k in model.halves:
            idx, val = model.support[(u, v)][k]
            counts[k] += _apply_delta(res[k], idx, val, dvtab, q)

    for step in range(config.max_iters):
        iterations = step + 1
        if current_cost == 0 and not config.minimize_bound:
            iterations = step
            break
        u, v = model.free[int(rng.integers(n_free))]
        old = int(state[u, v])
        new = int(rng.integers(q - 1))
        if new >= old:
            new += 1
        delta = new - old
        if model.incremental:
            shift_residues(u, v, delta)
            new_counts = counts
        else:
            state[u, v] = new
            cand_res = model.residues(state, q)
            state[u, v] = old
            new_counts = model.zero_counts(cand_res)
        new_cost = sum(weights[2 * k] * c for k, c in new_counts.items())

        if config.minimize_bound and current_cost == 0:
            # secondary phase: keep cost at zero, descend on the threshold
            if new_cost == 0:
                current_bound = _bound_of(state)
                state[u, v] = new
                gain = _bound_of(state) - current_bound
                state[u, v] = old
                accept = gain <= 0 or rng.random() < math.exp(-gain / max(temperature, 1e-12))
            else:
                accept = False
        else:
            gain = new_cost - current_cost
            accept = gain <= 0 or rng.random() < math.exp(-gain / max(temperature, 1e-12))

        if accept:
            state[u, v] = new
            current_cost = new_cost
            if not model.incremental:
                res = cand_res
                counts = new_counts
            if current_cost < best_cost:
                better = True
            elif current_cost == best_cost:
                bound_now = _bound_of(state)
                better = bound_now < best_bound or (
                    bound_now == best_bound
                    and tuple(state.ravel()) < tuple(best_state.ravel())
                )
            else:
                better = False
            if better:
                best_state = state.copy()
                best_cost = current_cost
                best_bound = _bound_of(state)
        elif model.incremental:
            shift_residues(u, v, -delta)
        if trace is not None:
            trace.append(current_cost)
        temperature = max(temperature * config.cooling_rate, config.min_temperature)

    matrix = ShiftMatrix(best_state.tolist())
    bound = _bound_of(best_state)
    girth12_modulus = None
    certificate = None
    if best_cost == 0:
        if qc_girth(matrix, q, GIRTH_CAP) != 12:
            raise RuntimeError("search soundness check failed against the chain engine")
        if tanner_girth(expand(matrix, q), GIRTH_CAP) != 12:
            raise RuntimeError("search soundness check failed against the BFS oracle")
        girth12_modulus = q
        certificate = certify(matrix, bound + _CERTIFY_MARGIN)
    return SearchResult(
        matrix=matrix,
        girth12_modulus=girth12_modulus,
        girth12_bound=bound,
        iterations_used=iterations,
        seed=config.seed,
        final_cost=float(best_cost),
        trace=tuple(trace) if trace is not None else None,
        certificate=certificate,
    )


def _worker(config: SearchConfig) -> SearchResult:
    return sa_search(config)


def max_workers_from_env() -> int | None:
    """Parallelism cap from QCGL_THREADS (unset or 0 means auto)."""
    raw = os.environ.get("QCGL_THREADS", "").strip()
    if not raw:
        return None
    n = int(raw)
    if n < 0:
        raise ValueError("QCGL_THREADS must be nonnegative")
    return n or None


def sa_search_parallel(
    config: SearchConfig, chains: int, max_workers: int | None = None
) -> SearchResult:
    """Independent annealing chains with seeds seed..seed+chains-1.

    The merge is deterministic for a given seed set: the success with the
    lowest seed wins; with no success, the lowest final cost (ties broken by
    seed) is reported.
    """
    if chains < 1:
        raise ValueError("need at least one chain")
    configs = [replace(config, seed=config.seed + i) for i in range(chains)]
    if chains == 1:
        results = [sa_search(configs[0])]
    else:
        workers = max_workers or os.cpu_count() or 1
        with ProcessPoolExecutor(max_workers=min(workers, chains)) as pool:
            results = list(pool.map(_worker, configs))
    successes = [r for r in results if r.success]
    if successes:
        return min(successes, key=lambda r: r.seed)
    return min(results, key=lambda r: (r.final_cost, r.seed))
