"""Streaming generation of k-generalized Lucas numbers.

A window keeps the last k terms and their running sum, so each new term costs
one big-integer addition and one subtraction regardless of k.
"""

from collections import deque
from typing import Iterator, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.errors import DomainError


class KParams(BaseModel):
    """Order of the recurrence."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=2)


def _as_params(params) -> KParams:
    if isinstance(params, KParams):
        return params
    try:
        return KParams(k=params)
    except ValueError:
        raise DomainError(f"k must be an integer >= 2, got {params!r}")


class SequenceWindow:
    """The last k terms of L^(k), starting from the initial window.

    Initially holds L_{2-k}, ..., L_{-1} = 0, L_0 = 2, L_1 = 1 and n_head = 1.
    """

    def __init__(self, params):
        self.params = _as_params(params)
        k = self.params.k
        self.terms: deque = deque([0] * (k - 2) + [2, 1], maxlen=k)
        self.n_head = 1
        self._sum = 3

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def head(self) -> int:
        return self.terms[-1]

    def value_at(self, n: int) -> int:
        """Term with index n if it is still inside the window."""
        offset = self.n_head - n
        if not 0 <= offset < self.k:
            raise IndexError(f"L_{n} is outside the window ending at {self.n_head}")
        return self.terms[-1 - offset]

    def advance(self) -> int:
        """Generate the next term and return it."""
        new = self._sum
        dropped = self.terms[0]
        self.terms.append(new)
        self._sum += new - dropped
        self.n_head += 1
        return new

    def advance_to(self, n: int) -> int:
        while self.n_head < n:
            self.advance()
        return self.value_at(n)


def term(params, n: int) -> int:
    """
    Exact value of L_n^(k).

    Args:
        params: KParams or the integer k
        n: Index, at least 2 - k

    Returns:
        L_n^(k) as a Python int

    Raises:
        DomainError: If n < 2 - k
    """
    params = _as_params(params)
    if n < 2 - params.k:
        raise DomainError(f"index {n} is below 2 - k = {2 - params.k}")
    window = SequenceWindow(params)
    if n <= 1:
        return window.value_at(n)
    return window.advance_to(n)


def stream(params, n_lo: int, n_hi: int) -> Iterator[Tuple[int, int]]:
    """
    Yield consecutive pairs (n, L_n^(k)) for n_lo <= n <= n_hi.

    Raises:
        DomainError: If n_lo < 2 - k or the range is empty
    """
    params = _as_params(params)
    if n_lo < 2 - params.k:
        raise DomainError(f"index {n_lo} is below 2 - k = {2 - params.k}")
    if n_hi < n_lo:
        raise DomainError(f"empty range {n_lo}..{n_hi}")
    return _stream(SequenceWindow(params), n_lo, n_hi)


def _stream(window: SequenceWindow, n_lo: int, n_hi: int) -> Iterator[Tuple[int, int]]:
    while window.n_head < n_lo - 1:
        window.advance()
    n = n_lo
    while n <= min(n_hi, window.n_head):
        yield n, window.value_at(n)
        n += 1
    while n <= n_hi:
        yield n, window.advance()
        n += 1
