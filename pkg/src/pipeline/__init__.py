"""End-to-end computations tying the reductions and the sweep together."""

from src.pipeline.orchestrate import (
    CertifyOutcome,
    SearchSummary,
    SmallKSummary,
    certify,
    n_bound_from,
    run_large_k,
    run_search,
    run_small_k,
    sweep_k_hi,
)

__all__ = [
    "CertifyOutcome",
    "SearchSummary",
    "SmallKSummary",
    "certify",
    "n_bound_from",
    "run_large_k",
    "run_search",
    "run_small_k",
    "sweep_k_hi",
]
