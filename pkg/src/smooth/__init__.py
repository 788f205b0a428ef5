"""Smoothness tests, largest prime factors and the smooth-term sweep."""

from src.smooth.factor import is_smooth, largest_prime_factor, smooth_part
from src.smooth.search import Checkpoint, family_records, scan_k, search
from src.smooth.t11 import verify_t11

__all__ = [
    "Checkpoint",
    "family_records",
    "is_smooth",
    "largest_prime_factor",
    "scan_k",
    "search",
    "smooth_part",
    "verify_t11",
]
