"""klucas - Diophantine analysis of k-generalized Lucas numbers."""

__version__ = "0.1.0"
