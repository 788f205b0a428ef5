"""Tests for the MCP tools, resources and prompts."""

import sys
from pathlib import Path

import pytest
from fastmcp import Client

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))


async def call(name, arguments):
    from server import mcp

    async with Client(mcp) as client:
        result = await client.call_tool(name, arguments)
        return result.content[0].text


class TestRegistration:
    """Test that every skill is registered."""

    @pytest.mark.asyncio
    async def test_tools_registered(self):
        """All eight tools are exposed."""
        from server import mcp

        async with Client(mcp) as client:
            tools = await client.list_tools()
            names = {tool.name for tool in tools}

        assert names == {
            "lucas_term",
            "lucas_range",
            "dominant_root",
            "smooth_factorization",
            "largest_prime_factor",
            "smooth_search",
            "bound_summary",
            "reduce_single_k",
        }

    @pytest.mark.asyncio
    async def test_resources(self):
        """Both documentation resources resolve."""
        from server import mcp

        async with Client(mcp) as client:
            method = await client.read_resource("klucas://docs/method")
            solutions = await client.read_resource("klucas://docs/solutions")

        assert "Resource not found" not in method[0].text
        assert "| 10 | 15 | 24500 |" in solutions[0].text

    @pytest.mark.asyncio
    async def test_prompts(self):
        """Prompts mention the tools they drive."""
        from server import mcp

        async with Client(mcp) as client:
            prompt = await client.get_prompt("explore_order", {"k": 3})

        assert "lucas_range" in prompt.messages[0].content.text


class TestSequenceTools:
    """Test lucas_term and lucas_range."""

    @pytest.mark.asyncio
    async def test_term(self):
        """L_7^(3) = 64."""
        text = await call("lucas_term", {"k": 3, "n": 7})
        assert "**Value**: 64" in text
        assert "COMPUTATION PROVENANCE" in text

    @pytest.mark.asyncio
    async def test_term_outside_domain(self):
        """n below 2 - k is refused, not guessed."""
        text = await call("lucas_term", {"k": 3, "n": -2})
        assert "RESULT UNAVAILABLE" in text

    @pytest.mark.asyncio
    async def test_range(self):
        """First Lucas numbers."""
        text = await call("lucas_range", {"k": 2, "n_lo": 0, "n_hi": 4})
        assert "| 0 | 2 |" in text
        assert "| 4 | 7 |" in text

    @pytest.mark.asyncio
    async def test_range_cap(self):
        """More than 500 terms is refused."""
        text = await call("lucas_range", {"k": 2, "n_lo": 0, "n_hi": 1000})
        assert "RESULT UNAVAILABLE" in text


class TestAnalyticTools:
    """Test dominant_root."""

    @pytest.mark.asyncio
    async def test_golden_ratio(self):
        text = await call("dominant_root", {"k": 2, "digits": 30})
        assert "1.618033988749894848204586834365" in text
        assert "f_k(alpha)" in text

    @pytest.mark.asyncio
    async def test_invalid_order(self):
        text = await call("dominant_root", {"k": 1})
        assert "RESULT UNAVAILABLE" in text


class TestSearchTools:
    """Test the smoothness tools and the capped sweep."""

    @pytest.mark.asyncio
    async def test_factorization(self):
        text = await call("smooth_factorization", {"value": "8400"})
        assert "| 7-smooth | yes |" in text
        assert "2^4 * 3 * 5^2 * 7" in text

    @pytest.mark.asyncio
    async def test_factorization_rejects_text(self):
        text = await call("smooth_factorization", {"value": "twelve"})
        assert "RESULT UNAVAILABLE" in text

    @pytest.mark.asyncio
    async def test_largest_prime_factor(self):
        text = await call("largest_prime_factor", {"value": "1350"})
        assert "**P(N)** = 5" in text

    @pytest.mark.asyncio
    async def test_search(self):
        text = await call("smooth_search", {"k_lo": 3, "k_hi": 3, "n_max": 20})
        assert "| 3 | 12 | 1350 |" in text
        assert "**Records**: 5" in text

    @pytest.mark.asyncio
    async def test_search_empty(self):
        text = await call("smooth_search", {"k_lo": 5, "k_hi": 5, "n_max": 6})
        assert "No sporadic 7-smooth terms" in text

    @pytest.mark.asyncio
    async def test_search_cap(self):
        text = await call("smooth_search", {"k_lo": 2, "k_hi": 1000, "n_max": 1449})
        assert "RESULT UNAVAILABLE" in text


class TestBoundsTools:
    """Test bound_summary and reduce_single_k."""

    @pytest.mark.asyncio
    async def test_bound_summary(self):
        text = await call("bound_summary", {"k": 10, "s": 4})
        assert "## Bounds for k = 10, s = 4" in text
        assert "guz_hypothesis_m3" in text
        assert "| NO |" not in text

    @pytest.mark.asyncio
    async def test_bound_summary_invalid(self):
        text = await call("bound_summary", {"k": 1})
        assert "RESULT UNAVAILABLE" in text

    @pytest.mark.asyncio
    async def test_reduce_out_of_range(self):
        text = await call("reduce_single_k", {"k": 1001})
        assert "RESULT UNAVAILABLE" in text

    @pytest.mark.asyncio
    async def test_reduce_golden_ratio(self):
        text = await call("reduce_single_k", {"k": 2})
        assert "## Reduction for k = 2" in text
        assert "| Lattice dimension | 5 |" in text
        assert "| Scale C | 10^355 |" in text
