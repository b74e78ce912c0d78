"""Girth analysis and certified girth-12 length families for (3,L)
quasi-cyclic LDPC shift matrices, plus an annealing search for new ones."""

from .annealing import (
    DEFAULT_WEIGHTS,
    SearchConfig,
    SearchResult,
    cost,
    load_search_config,
    sa_search,
    sa_search_parallel,
)
from .bounds import TERM_LABELS, TightBound, girth10_bound, tight_bound
from .cycle_engine import (
    ABOVE_CAP,
    GIRTH_CAP,
    Chain,
    CycleSpectrum,
    CycleWitness,
    chain_sum,
    cycle_spectrum,
    find_cycle,
    find_zero_sum_chain,
    qc_girth,
)
from .expansion import (
    BinaryParityMatrix,
    expand,
    export_alist,
    export_dense,
    parse_alist,
    tanner_girth,
)
from .shift_matrix import (
    BoundStats,
    DuplicateColumnWarning,
    ShiftMatrix,
    canonicalize,
    parse,
    stats,
)
from .verifier import CertificationReport, certify, check_tightness

__version__ = "0.1.0"

__all__ = [
    "ABOVE_CAP",
    "GIRTH_CAP",
    "DEFAULT_WEIGHTS",
    "TERM_LABELS",
    "BinaryParityMatrix",
    "BoundStats",
    "CertificationReport",
    "Chain",
    "CycleSpectrum",
    "CycleWitness",
    "DuplicateColumnWarning",
    "SearchConfig",
    "SearchResult",
    "ShiftMatrix",
    "TightBound",
    "canonicalize",
    "certify",
    "chain_sum",
    "check_tightness",
    "cost",
    "cycle_spectrum",
    "expand",
    "export_alist",
    "export_dense",
    "find_cycle",
    "find_zero_sum_chain",
    "girth10_bound",
    "load_search_config",
    "parse",
    "parse_alist",
    "qc_girth",
    "sa_search",
    "sa_search_parallel",
    "stats",
    "tanner_girth",
    "tight_bound",
]
