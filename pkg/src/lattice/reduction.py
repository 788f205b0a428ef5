"""The two reduction pipelines: per-k (small k) and iterated (large k).

Small k: for each 2 <= k <= 1000 the linear form in log 2, log 3, log 5,
log 7, log(2 alpha - 1), log alpha and log f_k(alpha) is reduced with a
per-k scale C, bounding n - 1. Large k: the form in log 2, ..., log 7 alone
bounds k / 2; the new k bound feeds a new n bound and the step repeats.
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpfr, mpq

from src.analytic.constants import constants_for
from src.analytic.interval import RealInterval, float_up, rounding, scientific_decimal, to_mpq
from src.bounds.formulas import lemma41a_bound
from src.config.loader import ReductionSettings
from src.errors import DivergenceError, DomainError, ResourceError
from src.lattice.basis import lll_reduce
from src.lattice.build import build_lattice
from src.lattice.deweger import c1_lower_bound, deweger_bound
from src.models.schemas import IteratedReduction, ReductionCertificate
from src.utils.escalation import DEFAULT_MAX_BITS, EscalationPolicy, ScaleRetry, escalate, retry_scaled

logger = logging.getLogger(__name__)

SMALL_PRIMES = (2, 3, 5, 7)
SMALL_K_C3 = 12
LARGE_K_C3 = 72

EtaSource = Callable[[int], Tuple[List[RealInterval], RealInterval]]


def ceil_int(value) -> int:
    """Exact ceiling of an int, float, mpq or mpfr."""
    q = to_mpq(value)
    return int(-((-q.numerator) // q.denominator))


def small_k_x0(k: int) -> int:
    """Coordinate bound ceil(1.4e27 k^7 (log k)^3)."""
    return ceil_int(lemma41a_bound(k))


def _prime_logs(bits: int) -> List[RealInterval]:
    return [RealInterval.exact(p, bits).log() for p in SMALL_PRIMES]


def _small_k_source(k: int, max_bits: int) -> Tuple[List[str], EtaSource]:
    """
    Labels and enclosure source of the small-k form.

    For k = 2, 2 alpha - 1 = sqrt(5) and f_2(alpha) = alpha / sqrt(5), so the
    seven logarithms are dependent; the form collapses to log 2, ..., log 7
    and log alpha with coefficient -n.
    """
    if k == 2:
        labels = ["log 2", "log 3", "log 5", "log 7", "log alpha"]
    else:
        labels = ["log 2", "log 3", "log 5", "log 7",
                  "log(2*alpha-1)", "log alpha", "log f_k(alpha)"]

    def source(bits: int):
        consts = constants_for(k, bits, max_bits=max_bits)
        etas = _prime_logs(bits)
        if k == 2:
            etas.append(consts.log_alpha)
        else:
            etas += [consts.log_two_alpha_minus_one, consts.log_alpha, consts.log_f_alpha]
        return etas, consts.log_alpha

    return labels, source


def _large_k_source(bits: int):
    etas = _prime_logs(bits)
    return etas, etas[0]


def _reduction_step(
    *,
    case: str,
    k: Optional[int],
    round_no: Optional[int],
    labels: Sequence[str],
    source: EtaSource,
    X0: int,
    c3: int,
    C: int,
    bound_on: str,
    max_bits: int,
) -> ReductionCertificate:
    """Build the lattice at scale C, reduce it and apply the de Weger bound."""

    def attempt(bits: int):
        etas, c4 = source(bits)
        basis, floors = build_lattice(etas, C)
        return etas, c4, basis, floors, bits

    start = C.bit_length() + 64
    policy = EscalationPolicy(initial_bits=start, max_bits=max(start, max_bits))
    etas, c4, basis, floors, bits = escalate(attempt, policy, label=f"{case} lattice floors")

    reduced = lll_reduce(basis)
    c1_sq, _ = c1_lower_bound(reduced)
    X = [X0] * basis.dim
    outcome = deweger_bound(c1_sq, X, c3, c4, C, max_bits=max_bits)
    logger.debug(
        "%s k=%s round=%s C~10^%d: c1^2 ~ 2^%d, hypothesis %s",
        case, k, round_no, len(str(C)) - 1, int(c1_sq.numerator).bit_length()
        - int(c1_sq.denominator).bit_length(), "holds" if outcome.hypothesis_ok else "fails",
    )
    return ReductionCertificate(
        case=case,
        k=k,
        round=round_no,
        dim=basis.dim,
        labels=list(labels),
        C=C,
        precision_bits=bits,
        etas=[{"label": label, **eta.to_payload(40)} for label, eta in zip(labels, etas)],
        eta_floors=floors,
        X=X,
        X0=X0,
        c1_sq=c1_sq,
        S=outcome.S,
        T=outcome.T,
        c3=mpq(c3),
        c4_lower=scientific_decimal(c4.lo, 30, upward=False),
        hypothesis_ok=outcome.hypothesis_ok,
        H_bound=outcome.H_bound,
        bound_on=bound_on,
        degenerate_branch=outcome.degenerate_branch,
    )


def reduce_small_k_case(
    k: int,
    n_cap,
    C: int,
    retry: Optional[ScaleRetry] = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> ReductionCertificate:
    """
    Reduce the small-k linear form for one k.

    Every coordinate is bounded by X0 = ceil(n_cap); c3 = 12 and
    c4 = log alpha. When c1^2 <= T^2 + S, C is multiplied by the retry factor.

    Args:
        k: Order, at least 2 (the sweep passes 1000 when the large-k chain stalls)
        n_cap: Upper bound for n (and hence for every coordinate)
        C: Initial scale
        retry: Rescaling schedule (10^5, at most 5 retries by default)
        max_bits: Precision cap

    Returns:
        ReductionCertificate whose H_bound bounds n - 1 (n itself for k = 2)

    Raises:
        DomainError: If k < 2 or C < 1
        ResourceError: If the hypothesis still fails after the last retry
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if C < 1:
        raise DomainError(f"scale C must be positive, got {C}")
    labels, source = _small_k_source(k, max_bits)
    X0 = ceil_int(n_cap)

    def run(scale: int) -> ReductionCertificate:
        return _reduction_step(
            case="small-k", k=k, round_no=None, labels=labels, source=source, X0=X0,
            c3=SMALL_K_C3, C=scale, bound_on="n" if k == 2 else "n-1", max_bits=max_bits,
        )

    cert, attempts = retry_scaled(
        run, C, lambda c: c.hypothesis_ok, retry, label=f"small-k k={k}"
    )
    if not cert.hypothesis_ok:
        raise ResourceError(
            f"k={k}: c1^2 <= T^2 + S even at C = 10^{len(str(cert.C)) - 1} "
            f"after {attempts} attempts"
        )
    return cert.model_copy(update={"attempts": attempts})


def small_k_scale_exponent(k: int, X0: int, settings: Optional[ReductionSettings] = None) -> int:
    """
    Exponent e of the scale C = 10^e used for order k.

    The reference exponent covers X0^7 up to k = 1000. For large k,
    log alpha, log(2 alpha - 1) and log f_k(alpha) lie within about 2^-k of
    log 2, log 3 and -log 2, so the lattice holds a vector with small
    coordinates whose last entry is near C * 10^(-growth_digits * k) times a
    fixed factor; C has to lift that entry above the coordinate box X0.
    """
    settings = settings or ReductionSettings()
    exponent = settings.small_k_c_exponent
    if X0 > settings.n_cap_ceiling:
        exponent = max(exponent, _scale_exponent(X0, 7))
    with rounding(128, gmpy2.RoundUp):
        growth = ceil_int(settings.small_k_growth_digits * k + gmpy2.log10(mpfr(X0)))
    return max(exponent, growth + settings.small_k_growth_offset)


def _small_k_job(args) -> ReductionCertificate:
    k, settings, max_bits = args
    X0 = small_k_x0(k)
    exponent = small_k_scale_exponent(k, X0, settings)
    retry = ScaleRetry(
        factor=10**settings.small_k_retry_exponent,
        max_retries=settings.small_k_max_retries,
    )
    return reduce_small_k_case(
        k,
        X0,
        10**exponent,
        retry=retry,
        max_bits=max_bits,
    )


def small_k_sweep(
    k_lo: int,
    k_hi: int,
    settings: Optional[ReductionSettings] = None,
    workers: Optional[int] = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> List[ReductionCertificate]:
    """
    Run reduce_small_k_case for every k in [k_lo, k_hi] over a process pool.

    Jobs are independent; certificates come back ordered by k.
    """
    if not 2 <= k_lo <= k_hi:
        raise DomainError(f"invalid k range {k_lo}..{k_hi}")
    settings = settings or ReductionSettings()
    jobs = [(k, settings, max_bits) for k in range(k_lo, k_hi + 1)]
    workers = workers or os.cpu_count() or 1

    if workers == 1 or len(jobs) == 1:
        return [_small_k_job(job) for job in jobs]

    results = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_small_k_job, job): job[0] for job in jobs}
        for future in as_completed(futures):
            cert = future.result()
            results[cert.k] = cert
            if len(results) % 50 == 0:
                logger.info("small-k reductions: %d of %d done", len(results), len(jobs))
    return [results[k] for k in sorted(results)]


def _scale_exponent(X0: int, dim: int) -> int:
    """ceil(dim * log10(X0)), rounded up."""
    with rounding(128, gmpy2.RoundUp):
        return ceil_int(dim * gmpy2.log10(mpfr(X0)))


def _large_k_round(
    round_no: int,
    n_bound,
    margin: int,
    max_retries: int,
    max_bits: int,
) -> ReductionCertificate:
    X0 = ceil_int(n_bound)
    exponent = _scale_exponent(X0, len(SMALL_PRIMES)) + margin
    labels = [f"log {p}" for p in SMALL_PRIMES]

    def run(scale: int) -> ReductionCertificate:
        return _reduction_step(
            case="large-k", k=None, round_no=round_no, labels=labels,
            source=_large_k_source, X0=X0, c3=LARGE_K_C3, C=scale,
            bound_on="k/2", max_bits=max_bits,
        )

    cert, attempts = retry_scaled(
        run, 10**exponent, lambda c: c.hypothesis_ok,
        ScaleRetry(factor=10, max_retries=max_retries), label=f"large-k round {round_no}",
    )
    if not cert.hypothesis_ok:
        raise ResourceError(
            f"large-k round {round_no}: c1^2 <= T^2 + S after {attempts} scale margins"
        )
    return cert.model_copy(update={"attempts": attempts})


def reduce_large_k_case(
    k_bound: float,
    n_bound: float,
    settings: Optional[ReductionSettings] = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> IteratedReduction:
    """
    Iterate the large-k reduction until the k bound drops below the target.

    Each round sets X0 = n bound, C = 10^(ceil(4 log10 X0) + margin), takes
    k <= 2H from the de Weger bound and recomputes the n bound from it.
    The chain stops at the target, after max_rounds, or when a round
    improves the k bound by less than min_progress (a stall).

    Raises:
        DomainError: If k_bound does not exceed the target
        DivergenceError: If a round returns a larger k bound than its input
    """
    settings = settings or ReductionSettings()
    target = settings.large_k_target
    if not k_bound > target:
        raise DomainError(f"large-k reduction needs k_bound > {target}, got {k_bound}")

    rounds: List[ReductionCertificate] = []
    k_bounds: List[int] = []
    n_bounds: List[float] = []
    k_prev, n_current = to_mpq(k_bound), n_bound
    stop_reason = f"stopped after {settings.max_rounds} rounds"

    for round_no in range(1, settings.max_rounds + 1):
        cert = _large_k_round(
            round_no, n_current, settings.large_k_margin,
            settings.large_k_max_retries, max_bits,
        )
        k_new = math.floor(2 * cert.H_bound)
        if k_new > k_prev:
            raise DivergenceError(
                f"large-k round {round_no} raised the k bound from {k_prev} to {k_new}"
            )
        n_current = lemma41a_bound(k_new)
        rounds.append(cert)
        k_bounds.append(k_new)
        n_bounds.append(float_up(n_current))
        logger.info("large-k round %d: k <= %d, n < %.3e", round_no, k_new, n_bounds[-1])

        if k_new < target:
            stop_reason = f"k < {target} after {round_no} rounds"
            break
        # a round that does not improve leaves the previous bound in force
        if k_new >= k_prev * (1 - to_mpq(settings.min_progress)):
            stop_reason = f"stalled at k <= {k_new} after {round_no} rounds"
            break
        k_prev = k_new

    final = min(k_bounds)
    return IteratedReduction(
        start_k=k_bound,
        start_n=n_bound,
        rounds=rounds,
        k_bounds=k_bounds,
        n_bounds=n_bounds,
        final_k_bound=final,
        target=target,
        closed=final < target,
        stop_reason=stop_reason,
    )
