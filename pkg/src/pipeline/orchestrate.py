"""End-to-end computations: the two reductions, the sweep and certify.

Each step writes a stamped certificate (and a CSV where one is useful) into
the configured output directory and returns a summary for the caller.
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel

from src.config.loader import PipelineConfig
from src.lattice.reduction import reduce_large_k_case, small_k_sweep
from src.models.schemas import (
    Certificate,
    IteratedReduction,
    ReductionCertificate,
    SolutionRecord,
)
from src.smooth.search import family_records, search
from src.utils.aggregation import MarginAggregator
from src.utils.exporters import CSVExporter, write_certificate, write_text
from src.utils.provenance import stamp_certificate

logger = logging.getLogger(__name__)


class SmallKSummary(BaseModel):
    """Per-k reduction certificates and the largest bound among them."""

    k_lo: int
    k_hi: int
    certificates: List[ReductionCertificate]
    max_bound: float
    argmax_k: int
    statistics: Dict[str, Optional[float]]


class SearchSummary(BaseModel):
    k_lo: int
    k_hi: int
    n_max: int
    records: List[SolutionRecord]


class CertifyOutcome(BaseModel):
    """Everything certify produced, with the paths it wrote."""

    large_k: IteratedReduction
    small_k: SmallKSummary
    search: SearchSummary
    family_count: int
    swept_k_hi: int
    closed: bool
    files: List[str]


def n_bound_from(cert: ReductionCertificate) -> int:
    """Largest n allowed by a small-k certificate."""
    h = math.floor(cert.H_bound)
    return h if cert.bound_on == "n" else h + 1


def _write(config: PipelineConfig, cert: Certificate, name: str) -> Path:
    path = write_certificate(cert, config.output_dir, name)
    logger.info("wrote %s", path)
    return path


def run_small_k(
    config: PipelineConfig,
    k_lo: int = 2,
    k_hi: int = 1000,
    write: bool = True,
) -> SmallKSummary:
    """Per-k reductions over [k_lo, k_hi]."""
    certs = small_k_sweep(
        k_lo, k_hi, config.reduction, workers=config.workers, max_bits=config.precision.max_bits
    )
    argmax_k, max_bound = MarginAggregator.argmax((c.k, c.H_bound) for c in certs)
    summary = SmallKSummary(
        k_lo=k_lo,
        k_hi=k_hi,
        certificates=certs,
        max_bound=max_bound,
        argmax_k=argmax_k,
        statistics=MarginAggregator.calculate_statistics(c.H_bound for c in certs),
    )
    if write:
        name = f"reduce-small-k-{k_lo}" if k_lo == k_hi else f"reduce-small-k-{k_lo}-{k_hi}"
        cert = stamp_certificate(
            "reduction",
            {"case": "small-k", "k_lo": k_lo, "k_hi": k_hi, "settings": config.reduction},
            {
                "max_bound": max_bound,
                "argmax_k": argmax_k,
                "statistics": summary.statistics,
                "certificates": certs,
            },
        )
        _write(config, cert, name)
        write_text(Path(config.output_dir) / f"{name}.csv", CSVExporter.export_bounds(certs))
    return summary


def run_large_k(config: PipelineConfig, write: bool = True) -> IteratedReduction:
    """Iterated reduction from the configured starting bounds."""
    settings = config.reduction
    chain = reduce_large_k_case(
        settings.large_k_start_k,
        settings.large_k_start_n,
        settings,
        max_bits=config.precision.max_bits,
    )
    if write:
        cert = stamp_certificate(
            "reduction",
            {"case": "large-k", "settings": settings},
            {"chain": chain},
        )
        _write(config, cert, "reduce-large-k")
        write_text(Path(config.output_dir) / "reduce-large-k.csv", CSVExporter.export_bounds(chain.rounds))
    return chain


def run_search(
    config: PipelineConfig,
    k_lo: Optional[int] = None,
    k_hi: Optional[int] = None,
    n_max: Optional[int] = None,
    n_bounds: Optional[Dict[int, int]] = None,
    resume: bool = False,
    write: bool = True,
) -> SearchSummary:
    """
    Sweep for 7-smooth terms.

    Per-k n bounds (from small-k certificates) take precedence over n_max.
    A checkpoint is used when resuming or when one is configured.
    """
    k_lo = k_lo or config.search.k_min
    k_hi = k_hi or config.search.k_max
    n_max = n_max or config.search.n_max

    checkpoint = config.search.checkpoint
    if resume and checkpoint is None:
        checkpoint = Path(config.output_dir) / "search.checkpoint"

    if n_bounds:
        bounds = dict(n_bounds)
        n_hi = lambda k: bounds.get(k, n_max)  # noqa: E731
    else:
        n_hi = n_max
    records = search(k_lo, k_hi, n_hi, workers=config.workers, checkpoint=checkpoint)
    summary = SearchSummary(k_lo=k_lo, k_hi=k_hi, n_max=n_max, records=records)
    if write:
        cert = stamp_certificate(
            "sweep",
            {"k_lo": k_lo, "k_hi": k_hi, "n_max": n_max, "per_k_bounds": n_bounds or {}},
            {"count": len(records), "records": records},
        )
        _write(config, cert, "search")
        write_text(Path(config.output_dir) / "search.csv", CSVExporter.export_records(records))
    return summary


def sweep_k_hi(config: PipelineConfig, large: IteratedReduction) -> int:
    """Largest k the per-k reductions and the sweep must cover."""
    swept = max(config.search.k_max, config.reduction.large_k_target)
    if not large.closed:
        swept = max(swept, large.final_k_bound)
        logger.info(
            "large-k chain stopped at k <= %d; extending the sweep to k = %d",
            large.final_k_bound, swept,
        )
    return swept


def certify(config: PipelineConfig) -> CertifyOutcome:
    """
    Run the large-k chain, the per-k reductions and the sweep end to end.

    When the large-k chain stalls above its target, the per-k reductions and
    the sweep are extended up to the stalled k bound so every k is covered.
    """
    large = run_large_k(config)
    swept_k_hi = sweep_k_hi(config, large)

    small = run_small_k(config, config.search.k_min, swept_k_hi)
    n_bounds = {c.k: n_bound_from(c) for c in small.certificates}
    found = run_search(
        config,
        k_lo=config.search.k_min,
        k_hi=swept_k_hi,
        n_max=max(n_bounds.values()),
        n_bounds=n_bounds,
    )
    family = family_records(config.search.k_min, swept_k_hi)

    closed = large.final_k_bound <= swept_k_hi
    cert = stamp_certificate(
        "sweep",
        {"config": config},
        {
            "large_k_final_bound": large.final_k_bound,
            "large_k_stop_reason": large.stop_reason,
            "small_k_max_bound": small.max_bound,
            "small_k_argmax": small.argmax_k,
            "swept_k_hi": swept_k_hi,
            "records": found.records,
            "family_count": len(family),
            "closed": closed,
        },
    )
    out = Path(config.output_dir)
    files = [str(_write(config, cert, "certify"))] + [
        str(out / name)
        for name in (
            "reduce-large-k.json",
            f"reduce-small-k-{config.search.k_min}-{swept_k_hi}.json",
            "search.json",
        )
    ]
    return CertifyOutcome(
        large_k=large,
        small_k=small,
        search=found,
        family_count=len(family),
        swept_k_hi=swept_k_hi,
        closed=closed,
        files=files,
    )
