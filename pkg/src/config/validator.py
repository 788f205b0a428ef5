"""Configuration validation utilities."""

import os
from typing import List

from src.config.loader import PipelineConfig


def validate_config(config: PipelineConfig) -> List[str]:
    """
    Compare a configuration against the reference defaults.

    Deviations are legal; they are reported so certificates are not mistaken
    for the reference computation.

    Args:
        config: Loaded pipeline configuration

    Returns:
        List of warning messages (empty if nothing stands out)
    """
    warnings = []
    defaults = PipelineConfig()

    reduction, ref = config.reduction, defaults.reduction
    if reduction.small_k_c_exponent != ref.small_k_c_exponent:
        warnings.append(
            f"small-k scale is 10^{reduction.small_k_c_exponent} instead of "
            f"10^{ref.small_k_c_exponent}; per-k bounds will differ from the reference run"
        )
    if (reduction.small_k_growth_digits, reduction.small_k_growth_offset) != (
        ref.small_k_growth_digits,
        ref.small_k_growth_offset,
    ):
        warnings.append(
            "small-k scale growth changed; large-k lattices may need scale retries"
        )
    if reduction.n_cap_ceiling != ref.n_cap_ceiling:
        warnings.append(f"n cap ceiling changed to {reduction.n_cap_ceiling:.3e}")
    if (reduction.large_k_start_k, reduction.large_k_start_n) != (
        ref.large_k_start_k,
        ref.large_k_start_n,
    ):
        warnings.append("large-k reduction starts from non-default bounds")
    if reduction.small_k_max_retries == 0:
        warnings.append("small-k retries disabled; a failing scale will abort the sweep")

    search = config.search
    if search.k_max < defaults.search.k_max:
        warnings.append(
            f"search stops at k = {search.k_max}; the sweep will not cover every k "
            "left open by the large-k reduction"
        )
    if search.n_max < defaults.search.n_max:
        warnings.append(
            f"search n_max = {search.n_max} is below the reduced bound {defaults.search.n_max}"
        )

    if config.precision.max_bits < 4096:
        warnings.append(
            f"precision cap of {config.precision.max_bits} bits is too small for the "
            "10^355-scale and larger lattices"
        )

    cores = os.cpu_count() or 1
    if config.workers is not None and config.workers > cores:
        warnings.append(f"{config.workers} workers requested but only {cores} cores available")

    return warnings


def print_validation_warnings(warnings: List[str]) -> None:
    """
    Print validation warnings to console.

    Args:
        warnings: List of warning messages
    """
    if warnings:
        print("\nConfiguration warnings:")
        for warning in warnings:
            print(f"  - {warning}")
        print()
