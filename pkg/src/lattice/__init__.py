"""Exact lattice reduction and the de Weger reduction pipelines."""

from src.lattice.basis import (
    GramSchmidtData,
    LatticeBasis,
    ReducedBasis,
    bareiss_determinant,
    gram_schmidt,
    lll_reduce,
    reducedness_failures,
)
from src.lattice.build import build_lattice
from src.lattice.deweger import DeWegerOutcome, c1_lower_bound, deweger_bound, deweger_height
from src.lattice.reduction import (
    reduce_large_k_case,
    reduce_small_k_case,
    small_k_scale_exponent,
    small_k_sweep,
    small_k_x0,
)

__all__ = [
    "DeWegerOutcome",
    "GramSchmidtData",
    "LatticeBasis",
    "ReducedBasis",
    "bareiss_determinant",
    "build_lattice",
    "c1_lower_bound",
    "deweger_bound",
    "deweger_height",
    "gram_schmidt",
    "lll_reduce",
    "reduce_large_k_case",
    "reduce_small_k_case",
    "reducedness_failures",
    "small_k_scale_exponent",
    "small_k_sweep",
    "small_k_x0",
]
