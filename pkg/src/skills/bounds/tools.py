"""Bound tools: closed-form bound evaluators and the per-k reduction."""

import math
from typing import Annotated, List

from fastmcp import FastMCP
from pydantic import Field

from src.analytic.interval import float_up
from src.bounds.chains import small_k_chain
from src.bounds.formulas import case_split_n, lemma31_bound, lemma41a_bound
from src.config.loader import PipelineConfig
from src.errors import KlucasError
from src.lattice.reduction import small_k_sweep
from src.models.schemas import BoundReport
from src.utils.provenance import computation_unavailable, provenance_footer, stamp_certificate

MAX_REDUCE_K = 1000


def _report_rows(reports: List[BoundReport]) -> str:
    rows = "| Bound | Value | Claim | Holds |\n|-------|-------|-------|-------|\n"
    for r in reports:
        holds = "-" if r.holds is None else ("yes" if r.holds else "NO")
        rows += f"| {r.name} | {r.value:.6g} | {r.claim or ''} | {holds} |\n"
    return rows


def register_bounds_tools(mcp: FastMCP, config: PipelineConfig):
    """Register bound tools with the MCP server."""

    @mcp.tool()
    async def bound_summary(
        k: Annotated[int, Field(description="Order of the recurrence (at least 2)")],
        s: Annotated[int, Field(description="Number of allowed primes (4 for 7-smooth)")] = 4,
    ) -> str:
        """
        Upper bounds for n in L_n^(k) with prime factors among the first s primes.

        Reports the Baker-type bound on log n, the explicit 7-smooth bound on n
        (s = 4 only), the case-split threshold 2^(k/2), and the chain that
        derives the log n bound from Matveev's theorem.
        """
        try:
            log_n = lemma31_bound(s, k)
            split = case_split_n(k)
            chain = small_k_chain(s, k) if s >= 3 else []
            explicit = lemma41a_bound(k) if s == 4 else None
        except KlucasError as e:
            return computation_unavailable(f"bound_summary(k={k}, s={s})", e.message)

        result = f"## Bounds for k = {k}, s = {s}\n\n"
        result += "| Quantity | Upper bound |\n|----------|-------------|\n"
        result += f"| log n | {float_up(log_n):.6g} |\n"
        if explicit is not None:
            result += f"| n (7-smooth, n >= k + 1) | {float_up(explicit):.6g} |\n"
        result += f"| 2^(k/2) | {float_up(split):.6g} |\n\n"
        if chain:
            result += "### Derivation from Matveev's theorem\n\n" + _report_rows(chain)
        result += provenance_footer(
            stamp_certificate(
                "bound",
                {"k": k, "s": s},
                {"log_n": log_n, "n": explicit, "case_split": split, "chain": chain},
            )
        )
        return result

    @mcp.tool()
    async def reduce_single_k(
        k: Annotated[int, Field(description="Order of the recurrence (2-1000)")],
    ) -> str:
        """
        Run the lattice reduction for one k and report the reduced bound on n.

        Uses exact LLL on the approximation lattice with the per-k scale
        (10^355 up to k ~ 370, larger beyond) and de Weger's lemma. Takes
        seconds per k.
        """
        if not 2 <= k <= MAX_REDUCE_K:
            return computation_unavailable("reduce_single_k", f"k must be in 2..{MAX_REDUCE_K}")
        try:
            cert = small_k_sweep(k, k, config.reduction, workers=1, max_bits=config.precision.max_bits)[0]
        except KlucasError as e:
            return computation_unavailable(f"reduce_single_k(k={k})", e.message)

        result = f"## Reduction for k = {k}\n\n"
        result += "| Field | Value |\n|-------|-------|\n"
        result += f"| Lattice dimension | {cert.dim} |\n"
        result += f"| Scale C | 10^{len(str(cert.C)) - 1} |\n"
        result += f"| Attempts | {cert.attempts} |\n"
        result += f"| c1 branch | {cert.degenerate_branch} |\n"
        result += f"| Bound on {cert.bound_on} | {math.floor(cert.H_bound)} |\n"
        result += provenance_footer(
            stamp_certificate("reduction", {"case": "small-k", "k": k}, {"certificate": cert})
        )
        return result
