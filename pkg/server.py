"""
klucas MCP Server

A Model Context Protocol server for certified computations on k-generalized
Lucas numbers: exact terms, dominant roots, Baker-type bounds, lattice
reductions and 7-smooth searches.
Built with FastMCP.
"""

import sys
from pathlib import Path

# Fix encoding for Windows console
if sys.platform == 'win32':
    import io
    if hasattr(sys.stdout, 'buffer'):
        sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    if hasattr(sys.stderr, 'buffer'):
        sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')

from dotenv import load_dotenv
from fastmcp import FastMCP

# Load environment variables from .env file
load_dotenv()

from src.config.loader import ConfigLoader
from src.config.validator import validate_config

# Import skills
from src.skills.sequence import register_sequence_tools
from src.skills.analytic import register_analytic_tools
from src.skills.search import register_search_tools
from src.skills.bounds import register_bounds_tools


# ============================================================================
# CONFIGURATION
# ============================================================================


def load_config():
    """
    Load the pipeline configuration from a file, the environment or defaults.

    Priority:
    1. KLUCAS_CONFIG
    2. klucas-config.yaml / .json / .conf
    3. Built-in defaults

    Returns:
        Validated PipelineConfig
    """
    try:
        config = ConfigLoader.load()

        # Warnings go to stderr: stdout carries the MCP stdio protocol
        warnings = validate_config(config)
        if warnings:
            for warning in warnings:
                print(f"Configuration warning: {warning}", file=sys.stderr)

        return config
    except Exception as e:
        print(f"Error loading configuration: {e}", file=sys.stderr)
        raise


def load_resource(filename: str) -> str:
    """Load a resource file content."""
    resource_path = Path(__file__).parent / "resources" / filename
    if resource_path.exists():
        return resource_path.read_text(encoding="utf-8")
    return f"Resource not found: {filename}"


# ============================================================================
# INITIALIZATION
# ============================================================================

CONFIG = load_config()

mcp = FastMCP(
    "klucas-smooth-terms",
    instructions="""
    I compute with k-generalized Lucas numbers L_n^(k): the sequence with initial
    terms 0, ..., 0, 2, 1 in which every term is the sum of the previous k terms.

    CERTIFIED RESULTS (MANDATORY - NO EXCEPTIONS):
    - Integers are exact; real numbers are outward-rounded enclosures
    - Root digits are truncated and agree at both ends of the enclosure
    - If a computation cannot be certified within its precision cap or budget,
      I report "Result unavailable" rather than an estimate
    - Every response ends with a provenance table (kind, version, digest)

    AVAILABLE TOOLS:
    Sequence:
    - lucas_term: one exact term L_n^(k)
    - lucas_range: up to 500 consecutive terms

    Analytic:
    - dominant_root: certified digits of alpha(k) with f_k(alpha) and 2 alpha - 1

    Search:
    - smooth_factorization: 2^a 3^b 5^c 7^d times a remainder
    - largest_prime_factor: P(N) within the factoring budget
    - smooth_search: 7-smooth terms in a small (k, n) box

    Bounds:
    - bound_summary: Baker-type and explicit bounds on n
    - reduce_single_k: lattice reduction of the bound for one k

    The complete sweep over k <= 1000 and the large-k iteration run through
    the `klucas` command line (`klucas certify`), not through this server.
    """,
)


# ============================================================================
# REGISTER SKILLS
# ============================================================================

# Register sequence tools (lucas_term, lucas_range)
register_sequence_tools(mcp, CONFIG)

# Register analytic tools (dominant_root)
register_analytic_tools(mcp, CONFIG)

# Register search tools (smooth_factorization, largest_prime_factor, smooth_search)
register_search_tools(mcp, CONFIG)

# Register bound tools (bound_summary, reduce_single_k)
register_bounds_tools(mcp, CONFIG)


# ============================================================================
# RESOURCES
# ============================================================================


@mcp.resource("klucas://docs/method")
def get_method_reference() -> str:
    """How the bounds, reductions and the sweep fit together."""
    return load_resource("method.md")


@mcp.resource("klucas://docs/solutions")
def get_solutions_reference() -> str:
    """The complete list of 7-smooth k-generalized Lucas numbers."""
    return load_resource("solutions.md")


# ============================================================================
# PROMPTS
# ============================================================================


@mcp.prompt()
def explore_order(k: int) -> str:
    """
    Walk through the certified facts for one order k.

    Args:
        k: Order of the recurrence
    """
    return f"""Let me summarize what is certified about L^({k}).

I'll use the tools to provide:

1. **First terms** - lucas_range for n from 0 to {k + 10}
2. **Dominant root** - dominant_root with 30 digits and its derived constants
3. **Baker-type bounds** - bound_summary with s = 4
4. **Reduced bound** - reduce_single_k (when k <= 1000)
5. **7-smooth terms** - smooth_search up to the reduced bound, if it is small enough

Every number comes from a certified computation. No estimates."""


@mcp.prompt()
def check_smoothness(value: str) -> str:
    """
    Check whether an integer is 7-smooth.

    Args:
        value: Integer as a decimal string
    """
    return f"""Let me check whether {value} is 7-smooth.

I'll use smooth_factorization to split off the powers of 2, 3, 5 and 7, and
largest_prime_factor on the remainder when it is not 1.

Every number comes from a certified computation. No estimates."""


# ============================================================================
# MAIN
# ============================================================================


def main():
    """Entry point for the MCP server."""
    mcp.run()


if __name__ == "__main__":
    main()
