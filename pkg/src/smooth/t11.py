"""Spot checks of P(L_n^(k)) > (1/86) log log n."""

import logging
from typing import Optional

from src.bounds.formulas import t11_threshold
from src.config.loader import FactoringSettings
from src.errors import DomainError, ResourceError
from src.models.schemas import T11Report
from src.sequence.window import stream
from src.smooth.factor import largest_prime_factor
from src.utils.aggregation import MarginAggregator

logger = logging.getLogger(__name__)


def verify_t11(
    k_lo: int,
    k_hi: int,
    n_max: int,
    factoring: Optional[FactoringSettings] = None,
) -> T11Report:
    """
    Check P(L_n^(k)) against the threshold for k_lo <= k <= k_hi, k < n <= n_max.

    Pairs whose term cannot be factored within the budget are skipped and
    listed; they do not count as failures.
    """
    if not 2 <= k_lo <= k_hi:
        raise DomainError(f"invalid k range {k_lo}..{k_hi}")
    factoring = factoring or FactoringSettings()

    checked, failures, skipped, margins = 0, [], [], []
    for k in range(k_lo, k_hi + 1):
        if n_max < k + 1:
            continue
        for n, value in stream(k, k + 1, n_max):
            threshold = t11_threshold(n)
            try:
                p = largest_prime_factor(
                    value,
                    trial_limit=factoring.trial_limit,
                    rho_iterations=factoring.rho_iterations,
                    max_bits=factoring.max_bits,
                )
            except ResourceError as e:
                skipped.append(f"(k={k}, n={n}): {e.message}")
                continue
            checked += 1
            margins.append(float(p - threshold))
            if not p > threshold:
                failures.append(f"(k={k}, n={n}): P = {p} <= {float(threshold):.6g}")

    if skipped:
        logger.info("t11: %d pairs skipped by the factoring budget", len(skipped))
    return T11Report(
        passed=not failures,
        checked=checked,
        failures=failures,
        skipped=skipped,
        margins=MarginAggregator.calculate_statistics(margins),
    )
