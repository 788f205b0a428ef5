"""Closed-form bounds and the inequality chains built from them."""

from src.bounds.chains import k_at_most_s_chain, large_n_chain, small_k_chain, small_n_chain
from src.bounds.formulas import (
    case_split_n,
    first_primes,
    guz_bound,
    lemma31_bound,
    lemma31_real,
    lemma41a_bound,
    matveev_log_lower_bound,
    prime_only_instance,
    small_k_instance,
    t11_threshold,
)

__all__ = [
    "case_split_n",
    "first_primes",
    "guz_bound",
    "k_at_most_s_chain",
    "large_n_chain",
    "lemma31_bound",
    "lemma31_real",
    "lemma41a_bound",
    "matveev_log_lower_bound",
    "prime_only_instance",
    "small_k_chain",
    "small_k_instance",
    "small_n_chain",
    "t11_threshold",
]
