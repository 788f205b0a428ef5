"""Numerical evaluation of the inequality chains behind the main bound.

Each evaluator computes the chain's intermediate quantities at a given s
(and k) and compares every one against the closed form it is claimed to stay
below. Values are rounded up and claims rounded down, so `holds=True` is a
certified numeric statement.
"""

from typing import List

import gmpy2
from gmpy2 import mpfr

from src.analytic.interval import float_down, float_up, rounding
from src.bounds.formulas import BITS, guz_bound, lemma31_bound, lemma31_real
from src.errors import DomainError
from src.models.schemas import BoundReport


def _report(name: str, inputs: dict, value, claim: str, claimed) -> BoundReport:
    return BoundReport(
        name=name,
        inputs=inputs,
        value=float_up(value),
        side="upper",
        claim=claim,
        claimed_value=float_down(claimed),
        holds=bool(value < claimed),
    )


def _check_s(s: int) -> None:
    if s < 2:
        raise DomainError(f"s must be at least 2, got {s}")


def _sixty_log_s_pow(s: int, direction) -> "mpfr":
    with rounding(BITS, direction):
        return (60 * gmpy2.log(mpfr(s))) ** s


def k_at_most_s_chain(s: int) -> List[BoundReport]:
    """When k <= s, log n < 46 s log s."""
    _check_s(s)
    value = lemma31_bound(s, s)
    with rounding(BITS, gmpy2.RoundDown):
        claimed = 46 * s * gmpy2.log(mpfr(s))
    return [_report("log_n_k_at_most_s", {"s": s}, value, "log n < 46 s log s", claimed)]


def small_k_chain(s: int, k: int) -> List[BoundReport]:
    """
    Small-k branch: (n+1)/(log(n+1))^3 < T with T = 1.21e13 s^4.5 k^(3+s) (60 log s)^s.

    Reports T > 46656 (the Guz hypothesis for m = 3), the Guz bound on n + 1
    against 9.68e13 s^7.5 k^(3+s) (60 log s)^s (12s + k)^3, and its logarithm
    against the log n bound of lemma31_bound.
    """
    _check_s(s)
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    inputs = {"s": s, "k": k}
    with rounding(BITS, gmpy2.RoundUp):
        T = mpfr(121) * mpfr(10) ** 11 * mpfr(s) ** mpfr(4.5) * mpfr(k) ** (3 + s)
        T *= _sixty_log_s_pow(s, gmpy2.RoundUp)
    reports = [
        BoundReport(
            name="guz_hypothesis_m3",
            inputs=inputs,
            value=float_down(T),
            side="lower",
            claim="T > 46656",
            claimed_value=46656.0,
            holds=bool(T > 46656),
        )
    ]
    n_plus_1 = guz_bound(3, T)
    with rounding(BITS, gmpy2.RoundDown):
        claimed = mpfr(968) * mpfr(10) ** 11 * mpfr(s) ** mpfr(7.5) * mpfr(k) ** (3 + s)
        claimed *= _sixty_log_s_pow(s, gmpy2.RoundDown) * mpfr(12 * s + k) ** 3
    reports.append(
        _report("n_plus_1_small_k", inputs, n_plus_1,
                "n + 1 < 9.68e13 s^7.5 k^(3+s) (60 log s)^s (12s + k)^3", claimed)
    )
    with rounding(BITS, gmpy2.RoundUp):
        log_n = gmpy2.log(n_plus_1)
    reports.append(
        _report("log_n_small_k", inputs, log_n,
                "log n < 35 s log s + 3 s log k + 3 log(12s + k)", _lemma31_down(s, k))
    )
    return reports


def _lemma31_down(s: int, k: int) -> "mpfr":
    with rounding(BITS, gmpy2.RoundDown):
        s_, k_ = mpfr(s), mpfr(k)
        return 35 * s_ * gmpy2.log(s_) + 3 * s_ * gmpy2.log(k_) + 3 * gmpy2.log(12 * s_ + k_)


def large_n_chain(s: int) -> List[BoundReport]:
    """
    Branch n >= 2^(k/2): k / log k < 133 s, hence k < 2143 s log s,
    log k < 14 log s and log n < 86 s log s.
    """
    _check_s(s)
    inputs = {"s": s}
    k_bound = guz_bound(1, 133 * s)
    with rounding(BITS, gmpy2.RoundDown):
        log_s = gmpy2.log(mpfr(s))
        claim_k = 2143 * s * log_s
        claim_log_k = 14 * log_s
        claim_log_n = 86 * s * log_s
    with rounding(BITS, gmpy2.RoundUp):
        log_k = gmpy2.log(k_bound)
    return [
        _report("k_large_n", inputs, k_bound, "k < 2143 s log s", claim_k),
        _report("log_k_large_n", inputs, log_k, "log k < 14 log s", claim_log_k),
        _report("log_n_large_n", inputs, lemma31_real(s, k_bound),
                "log n < 86 s log s", claim_log_n),
    ]


def small_n_chain(s: int) -> List[BoundReport]:
    """
    Branch n < 2^(k/2): k / log k < 1.4e7 s^5.5 (60 log s)^s, hence
    k < 6e8 s^6.5 (60 log s)^s log s and log k < 26 s log s.
    """
    _check_s(s)
    inputs = {"s": s}
    with rounding(BITS, gmpy2.RoundUp):
        T = mpfr(14) * mpfr(10) ** 6 * mpfr(s) ** mpfr(5.5) * _sixty_log_s_pow(s, gmpy2.RoundUp)
    k_bound = guz_bound(1, T)
    with rounding(BITS, gmpy2.RoundDown):
        log_s = gmpy2.log(mpfr(s))
        claim_k = 6 * mpfr(10) ** 8 * mpfr(s) ** mpfr(6.5) * _sixty_log_s_pow(s, gmpy2.RoundDown) * log_s
        claim_log_k = 26 * s * log_s
    with rounding(BITS, gmpy2.RoundUp):
        log_k = gmpy2.log(k_bound)
    return [
        _report("k_small_n", inputs, k_bound, "k < 6e8 s^6.5 (60 log s)^s log s", claim_k),
        _report("log_k_small_n", inputs, log_k, "log k < 26 s log s", claim_log_k),
    ]
