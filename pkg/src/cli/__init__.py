"""Command-line interface."""

from src.cli.main import build_parser, main, parse_range

__all__ = ["build_parser", "main", "parse_range"]
