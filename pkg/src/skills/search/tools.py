"""Search tools: 7-smooth parts, largest prime factors and capped sweeps."""

from typing import Annotated

from fastmcp import FastMCP
from pydantic import Field

from src.config.loader import PipelineConfig
from src.errors import KlucasError
from src.smooth.factor import largest_prime_factor as _largest_prime_factor
from src.smooth.factor import smooth_part
from src.smooth.search import search
from src.utils.exporters import CSVExporter
from src.utils.provenance import computation_unavailable, provenance_footer, stamp_certificate

MAX_SWEEP_PAIRS = 50_000


def _parse_int(text: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ValueError(f"'{text}' is not a decimal integer")


def register_search_tools(mcp: FastMCP, config: PipelineConfig):
    """Register search tools with the MCP server."""

    @mcp.tool()
    async def smooth_factorization(
        value: Annotated[str, Field(description="Positive integer, as a decimal string")],
    ) -> str:
        """
        Split N into 2^a 3^b 5^c 7^d times a remainder coprime to 210.

        N is 7-smooth exactly when the remainder is 1.
        """
        try:
            n = _parse_int(value)
            f = smooth_part(n)
        except ValueError as e:
            return computation_unavailable("smooth_factorization", str(e))
        except KlucasError as e:
            return computation_unavailable("smooth_factorization", e.message)

        result = "## 7-smooth part\n\n"
        result += "| Field | Value |\n|-------|-------|\n"
        for name, exponent in (("2^a", f.a), ("3^b", f.b), ("5^c", f.c), ("7^d", f.d)):
            result += f"| {name} | {exponent} |\n"
        result += f"| remainder | {f.remainder} |\n"
        result += f"| 7-smooth | {'yes' if f.is_smooth else 'no'} |\n\n"
        result += f"**N** = {f.describe()}\n"
        result += provenance_footer(stamp_certificate("sweep", {"N": n}, {"factorization": f}))
        return result

    @mcp.tool()
    async def largest_prime_factor(
        value: Annotated[str, Field(description="Integer, as a decimal string")],
    ) -> str:
        """
        P(N), the largest prime factor of N (with P(0) = P(+-1) = 1).

        Uses trial division and Brent's rho within the configured budget;
        a cofactor the budget cannot split is reported, not guessed.
        """
        budget = config.factoring
        try:
            n = _parse_int(value)
            p = _largest_prime_factor(n, budget.trial_limit, budget.rho_iterations, budget.max_bits)
        except ValueError as e:
            return computation_unavailable("largest_prime_factor", str(e))
        except KlucasError as e:
            return computation_unavailable("largest_prime_factor", e.message)

        result = "## Largest prime factor\n\n"
        result += f"**N** = {n}\n\n**P(N)** = {p}\n"
        result += provenance_footer(stamp_certificate("sweep", {"N": n}, {"P": p}))
        return result

    @mcp.tool()
    async def smooth_search(
        k_lo: Annotated[int, Field(description="Smallest order k (at least 2)")],
        k_hi: Annotated[int, Field(description="Largest order k")],
        n_max: Annotated[int, Field(description="Largest index n")] = 100,
    ) -> str:
        """
        Sporadic 7-smooth terms L_n^(k) with k_lo <= k <= k_hi and k < n <= n_max.

        Limited to 50,000 (k, n) pairs per call; use the klucas CLI for the
        full sweep.
        """
        pairs = max(k_hi - k_lo + 1, 0) * max(n_max - k_lo, 0)
        if pairs > MAX_SWEEP_PAIRS:
            return computation_unavailable(
                "smooth_search", f"{pairs} (k, n) pairs exceeds the per-call limit of {MAX_SWEEP_PAIRS}"
            )
        try:
            records = search(k_lo, k_hi, n_max, workers=1)
        except KlucasError as e:
            return computation_unavailable("smooth_search", e.message)

        result = f"## 7-smooth terms for {k_lo} <= k <= {k_hi}, n <= {n_max}\n\n"
        if records:
            result += "| k | n | L_n^(k) | Factorization |\n|---|---|---------|---------------|\n"
            for r in records:
                result += f"| {r.k} | {r.n} | {r.value} | {r.factorization.describe()} |\n"
        else:
            result += "No sporadic 7-smooth terms in this range.\n"
        result += f"\n**Records**: {len(records)}\n\n"
        result += "```csv\n" + CSVExporter.export_records(records) + "```\n"
        result += provenance_footer(
            stamp_certificate(
                "sweep", {"k_lo": k_lo, "k_hi": k_hi, "n_max": n_max}, {"records": records}
            )
        )
        return result
