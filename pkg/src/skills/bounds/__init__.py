"""Bounds skill: bound evaluators and single-k reductions."""

from .tools import register_bounds_tools

__all__ = ["register_bounds_tools"]
