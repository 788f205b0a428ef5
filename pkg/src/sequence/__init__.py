"""k-generalized Lucas sequences."""

from src.sequence.identities import check_identities
from src.sequence.window import KParams, SequenceWindow, stream, term

__all__ = ["KParams", "SequenceWindow", "check_identities", "stream", "term"]
