"""Analytic skill: certified dominant roots."""

from .tools import register_analytic_tools

__all__ = ["register_analytic_tools"]
