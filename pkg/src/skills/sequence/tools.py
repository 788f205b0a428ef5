"""Sequence tools: single terms and short runs of L^(k)."""

from typing import Annotated

from fastmcp import FastMCP
from pydantic import Field

from src.config.loader import PipelineConfig
from src.errors import KlucasError
from src.sequence.window import stream, term
from src.utils.provenance import computation_unavailable, provenance_footer, stamp_certificate

MAX_RANGE_TERMS = 500


def register_sequence_tools(mcp: FastMCP, config: PipelineConfig):
    """Register sequence tools with the MCP server."""

    @mcp.tool()
    async def lucas_term(
        k: Annotated[int, Field(description="Order of the recurrence (at least 2)")],
        n: Annotated[int, Field(description="Index (at least 2 - k)")],
    ) -> str:
        """
        Exact value of the k-generalized Lucas number L_n^(k).

        The sequence starts 0, ..., 0, 2, 1 (L_0 = 2, L_1 = 1) and each term is
        the sum of the previous k terms.
        """
        try:
            value = term(k, n)
        except KlucasError as e:
            return computation_unavailable(f"lucas_term(k={k}, n={n})", e.message)

        result = f"## L_{n}^({k})\n\n"
        result += f"**Value**: {value}\n\n"
        result += f"**Digits**: {len(str(abs(value)))}\n"
        result += provenance_footer(
            stamp_certificate("sweep", {"k": k, "n": n}, {"value": value})
        )
        return result

    @mcp.tool()
    async def lucas_range(
        k: Annotated[int, Field(description="Order of the recurrence (at least 2)")],
        n_lo: Annotated[int, Field(description="First index")],
        n_hi: Annotated[int, Field(description="Last index (inclusive)")],
    ) -> str:
        """
        Consecutive terms L_n^(k) for n_lo <= n <= n_hi, at most 500 of them.
        """
        if n_hi - n_lo + 1 > MAX_RANGE_TERMS:
            return computation_unavailable(
                "lucas_range", f"at most {MAX_RANGE_TERMS} terms per call, got {n_hi - n_lo + 1}"
            )
        try:
            terms = list(stream(k, n_lo, n_hi))
        except KlucasError as e:
            return computation_unavailable(f"lucas_range(k={k}, {n_lo}..{n_hi})", e.message)

        result = f"## L_n^({k}) for {n_lo} <= n <= {n_hi}\n\n"
        result += "| n | L_n |\n|---|-----|\n"
        for n, value in terms:
            result += f"| {n} | {value} |\n"
        result += provenance_footer(
            stamp_certificate(
                "sweep", {"k": k, "n_lo": n_lo, "n_hi": n_hi}, {"terms": [v for _, v in terms]}
            )
        )
        return result
