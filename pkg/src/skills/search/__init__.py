"""Search skill: smooth parts, largest prime factors and small sweeps."""

from .tools import register_search_tools

__all__ = ["register_search_tools"]
