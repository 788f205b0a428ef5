"""Analytic tools: the dominant root and its derived constants."""

from typing import Annotated

from fastmcp import FastMCP
from pydantic import Field

from src.analytic import constants, roots
from src.config.loader import PipelineConfig
from src.errors import KlucasError
from src.utils.provenance import computation_unavailable, provenance_footer, stamp_certificate

MAX_DIGITS = 2000


def register_analytic_tools(mcp: FastMCP, config: PipelineConfig):
    """Register analytic tools with the MCP server."""

    @mcp.tool()
    async def dominant_root(
        k: Annotated[int, Field(description="Order of the recurrence (at least 2)")],
        digits: Annotated[int, Field(description="Decimal digits after the point (1-2000)")] = 30,
    ) -> str:
        """
        Certified digits of alpha(k), the real root of x^k - x^(k-1) - ... - 1 in (1, 2).

        Digits are truncated, not rounded: both endpoints of the certified
        enclosure agree on them. Also reports f_k(alpha) and 2 alpha - 1.
        """
        if not 1 <= digits <= MAX_DIGITS:
            return computation_unavailable("dominant_root", f"digits must be in 1..{MAX_DIGITS}")
        try:
            value = roots.root_digits(k, digits, config.precision.max_bits)
            derived = constants.constants_for(k, config.precision.initial_bits, config.precision.max_bits)
        except KlucasError as e:
            return computation_unavailable(f"dominant_root(k={k})", e.message)

        result = f"## Dominant root alpha({k})\n\n"
        result += f"**alpha** = {value}...\n\n"
        result += "| Constant | Lower | Upper |\n|----------|-------|-------|\n"
        for name, interval in (
            ("f_k(alpha)", derived.f_alpha),
            ("2 alpha - 1", derived.two_alpha_minus_one),
            ("log alpha", derived.log_alpha),
        ):
            result += f"| {name} | {interval.decimal_lower(20)} | {interval.decimal_upper(20)} |\n"
        result += provenance_footer(
            stamp_certificate(
                "root",
                {"k": k, "digits": digits},
                {"digits": value, "constants": derived.to_payload()},
            )
        )
        return result
