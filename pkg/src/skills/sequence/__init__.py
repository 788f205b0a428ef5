"""Sequence skill: terms of L^(k)."""

from .tools import register_sequence_tools

__all__ = ["register_sequence_tools"]
