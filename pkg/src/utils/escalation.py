"""Retry policies: precision doubling and constant rescaling.

Certified computations fail softly when an enclosure is too wide or a floor
is ambiguous. These helpers rerun them at higher precision (or with a larger
scale constant) until they succeed or a configured cap is reached.
"""

import logging
from typing import Callable, Iterator, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, Field

from src.errors import AmbiguousFloorError, InsufficientPrecision, ResourceError

logger = logging.getLogger(__name__)

T = TypeVar("T")

DEFAULT_MAX_BITS = 2**21


class EscalationPolicy(BaseModel):
    """Precision schedule: start, multiply by `factor`, stop at `max_bits`."""

    initial_bits: int = Field(default=192, ge=8)
    max_bits: int = Field(default=DEFAULT_MAX_BITS, ge=8)
    factor: int = Field(default=2, ge=2)

    def schedule(self, requested: Optional[int] = None) -> Iterator[int]:
        bits = max(self.initial_bits, requested or 0)
        if bits > self.max_bits:
            raise ResourceError(
                f"requested {bits} bits exceeds the precision cap of {self.max_bits}"
            )
        while bits <= self.max_bits:
            yield bits
            bits *= self.factor


class ScaleRetry(BaseModel):
    """Rescaling schedule for the lattice constant C."""

    factor: int = Field(default=10**5, ge=2)
    max_retries: int = Field(default=5, ge=0, le=50)


def escalate(
    func: Callable[[int], T],
    policy: Optional[EscalationPolicy] = None,
    requested_bits: Optional[int] = None,
    retry_on: Tuple[Type[Exception], ...] = (InsufficientPrecision, AmbiguousFloorError),
    label: str = "computation",
) -> T:
    """
    Call func(bits) with increasing precision until it succeeds.

    Args:
        func: Computation taking the working precision in bits
        policy: Precision schedule (uses defaults if None)
        requested_bits: Minimum precision for the first attempt
        retry_on: Exceptions that trigger another attempt
        label: Name used in log messages

    Returns:
        Result of the first successful call

    Raises:
        ResourceError: If the precision cap is reached
    """
    if policy is None:
        policy = EscalationPolicy()

    last_exception: Optional[Exception] = None
    for bits in policy.schedule(requested_bits):
        try:
            return func(bits)
        except retry_on as e:
            last_exception = e
            logger.debug("%s: %s; escalating beyond %d bits", label, e, bits)

    raise ResourceError(
        f"{label}: precision cap of {policy.max_bits} bits reached ({last_exception})"
    )


def retry_scaled(
    func: Callable[[int], T],
    start: int,
    accept: Callable[[T], bool],
    config: Optional[ScaleRetry] = None,
    label: str = "reduction",
) -> Tuple[T, int]:
    """
    Call func(scale) with scale multiplied by config.factor until accept(result).

    Returns:
        (last result, number of attempts). The last result is returned even
        when it was not accepted; callers inspect it.
    """
    if config is None:
        config = ScaleRetry()

    scale = start
    result = func(scale)
    attempts = 1
    while not accept(result) and attempts <= config.max_retries:
        logger.debug("%s: rejected at scale %s, retrying", label, _magnitude(scale))
        scale *= config.factor
        result = func(scale)
        attempts += 1
    return result, attempts


def _magnitude(value: int) -> str:
    digits = len(str(value))
    return f"~10^{digits - 1}"
