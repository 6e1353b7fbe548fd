"""Exact extremal values, free-hypergraph generators and the results cache."""

from .cache import ResultsCache, default_cache_path
from .canon import canonical_form
from .generate import gen_planted_free, gen_random_free, steiner_triple_system
from .search import (
    REFERENCE_LIMITS,
    RatioRow,
    RatioTable,
    SearchConfig,
    SearchRecord,
    compute_f,
    compute_g,
    packing_number,
    ratio_table,
)

__all__ = [
    "REFERENCE_LIMITS", "RatioRow", "RatioTable", "ResultsCache", "SearchConfig", "SearchRecord",
    "canonical_form", "compute_f", "compute_g", "default_cache_path", "gen_planted_free",
    "gen_random_free", "packing_number", "ratio_table", "steiner_triple_system",
]
