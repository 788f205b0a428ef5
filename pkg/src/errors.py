"""Exception hierarchy shared by the library, the CLI and the MCP tools."""

from typing import Optional


class KlucasError(Exception):
    """Base error carrying the process exit code the CLI should use."""

    exit_code = 1

    def __init__(self, message: str, exit_code: Optional[int] = None):
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.message)


class DomainError(KlucasError):
    """Argument outside the domain of the operation (e.g. n < 2 - k)."""

    exit_code = 2


class PreconditionError(KlucasError):
    """A lemma was applied outside its hypotheses."""

    exit_code = 2


class ResourceError(KlucasError):
    """Precision cap, factoring budget or size cap exhausted."""

    exit_code = 3


class RankError(KlucasError):
    """Lattice columns are linearly dependent."""


class DivergenceError(KlucasError):
    """An iterated reduction produced a larger bound than the previous round."""


class CheckFailure(KlucasError):
    """A verification suite reported at least one failure."""


class AmbiguousFloorError(KlucasError):
    """An enclosure of C*eta straddles an integer; more precision is needed."""

    def __init__(self, index: int, precision_bits: int):
        self.index = index
        self.precision_bits = precision_bits
        super().__init__(
            f"floor of C*eta[{index}] is ambiguous at {precision_bits} bits"
        )


class InsufficientPrecision(KlucasError):
    """An enclosure is too wide to decide a comparison at the current precision."""
