"""Certified enclosures of the dominant root of Psi_k(x) = x^k - x^(k-1) - ... - 1.

For x != 1, Psi_k(x) = g(x) / (x - 1) with g(x) = x^(k+1) - 2x^k + 1, so on
the bracket (2(1 - 2^-k), 2) the sign of Psi_k is the sign of g. Endpoint
signs are always decided in exact rational arithmetic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq, mpz

from src.analytic.interval import RealInterval, fixed_decimal, to_mpq
from src.errors import DomainError, InsufficientPrecision, ResourceError
from src.utils.escalation import DEFAULT_MAX_BITS, EscalationPolicy, escalate

logger = logging.getLogger(__name__)

PRE_BISECTION_BITS = 8


def psi_eval(k: int, x) -> Fraction:
    """
    Exact value of Psi_k at a rational point.

    Args:
        k: Order, at least 2
        x: int, Fraction or mpq

    Returns:
        Psi_k(x) as a Fraction
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    q = to_mpq(x)
    if q == 1:
        value = mpq(1 - k)
    else:
        value = (q ** (k + 1) - 2 * q**k + 1) / (q - 1)
    return Fraction(int(value.numerator), int(value.denominator))


def _g_sign(k: int, x: "mpq") -> int:
    """Sign of x^(k+1) - 2x^k + 1 at a rational x > 0."""
    p, q = mpz(x.numerator), mpz(x.denominator)
    v = p**k * (p - 2 * q) + q ** (k + 1)
    return (v > 0) - (v < 0)


def psi_sign(k: int, x) -> int:
    """Sign of Psi_k(x) for rational x > 1."""
    q = to_mpq(x)
    if q <= 1:
        value = psi_eval(k, q)
        return (value > 0) - (value < 0)
    return _g_sign(k, q)


def _exact_bits(*values) -> int:
    return max(max(int(v.numerator).bit_length(), 1) for v in values) + 2


@dataclass(frozen=True)
class RootCertificate:
    """Enclosure of alpha(k) with the exact signs of Psi_k at its endpoints."""

    k: int
    alpha: RealInterval
    sign_lo: int
    sign_hi: int

    @property
    def bits(self) -> int:
        """Number of bits b with width <= 2^-b."""
        width = self.alpha.upper() - self.alpha.lower()
        if width == 0:
            return self.alpha.precision_bits
        return int(width.denominator.bit_length() - width.numerator.bit_length()) - 1

    def check(self) -> bool:
        """Recheck the certificate from scratch."""
        lo, hi = self.alpha.lower(), self.alpha.upper()
        bracket_lo = 2 - mpq(1, 2 ** (self.k - 1))
        return (
            bracket_lo < lo
            and hi < 2
            and psi_sign(self.k, lo) < 0 < psi_sign(self.k, hi)
        )

    def to_payload(self) -> dict:
        return {
            "k": self.k,
            "alpha": self.alpha.to_payload(),
            "sign_lo": self.sign_lo,
            "sign_hi": self.sign_hi,
        }


def dominant_root(
    k: int,
    precision_bits: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> RootCertificate:
    """
    Certify alpha(k) to within 2^-precision_bits.

    Bisects the bracket (2(1 - 2^-k), 2) down to width 2^-8, then runs
    interval Newton on g; a Newton step that fails to halve the bracket is
    replaced by a bisection step.

    Args:
        k: Order, at least 2
        precision_bits: Target width exponent, at least 8
        max_bits: Hard cap on precision_bits

    Returns:
        RootCertificate whose interval lies strictly inside the bracket

    Raises:
        DomainError: If k < 2 or precision_bits < 8
        ResourceError: If precision_bits exceeds max_bits
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if precision_bits < PRE_BISECTION_BITS:
        raise DomainError(f"precision_bits must be at least 8, got {precision_bits}")
    if precision_bits > max_bits:
        raise ResourceError(
            f"root precision {precision_bits} bits exceeds the cap of {max_bits}"
        )

    bracket_lo = 2 - mpq(1, 2 ** (k - 1))
    lo, hi = bracket_lo, mpq(2)
    target = mpq(1, 2**precision_bits)
    working = precision_bits + 64

    def bisect(lo, hi):
        mid = (lo + hi) / 2
        return (mid, hi) if _g_sign(k, mid) < 0 else (lo, mid)

    while hi - lo >= mpq(1, 2**PRE_BISECTION_BITS):
        lo, hi = bisect(lo, hi)

    newton_steps = bisection_steps = 0
    while hi - lo > target:
        width = hi - lo
        candidate = _newton_step(k, lo, hi, working)
        if candidate is not None:
            new_lo, new_hi = candidate
            if (
                new_hi - new_lo <= width / 2
                and (new_lo == lo or _g_sign(k, new_lo) < 0)
                and (new_hi == hi or _g_sign(k, new_hi) > 0)
            ):
                lo, hi = new_lo, new_hi
                newton_steps += 1
                continue
        lo, hi = bisect(lo, hi)
        bisection_steps += 1

    # the certificate must sit strictly inside the bracket
    while lo == bracket_lo or hi == 2:
        lo, hi = bisect(lo, hi)

    logger.debug(
        "root k=%d: %d Newton steps, %d bisection steps to 2^-%d",
        k, newton_steps, bisection_steps, precision_bits,
    )
    bits = max(working, _exact_bits(lo, hi))
    return RootCertificate(
        k=k,
        alpha=RealInterval.from_bounds(lo, hi, bits),
        sign_lo=_g_sign(k, lo),
        sign_hi=_g_sign(k, hi),
    )


def _newton_step(k: int, lo: "mpq", hi: "mpq", bits: int):
    """One interval Newton step for g on [lo, hi]; None if it is inconclusive."""
    box = RealInterval.from_bounds(lo, hi, bits)
    # g'(x) = x^(k-1) ((k+1)x - 2k) is positive and increasing on the bracket
    slope = box ** (k - 1) * ((k + 1) * box - 2 * k)
    if slope.lo <= 0:
        return None
    mid = (lo + hi) / 2
    g_mid = mid ** (k + 1) - 2 * mid**k + 1
    image = RealInterval.exact(mid, bits) - RealInterval.exact(g_mid, bits) / slope
    new_lo = max(lo, image.lower())
    new_hi = min(hi, image.upper())
    if new_lo > new_hi:
        return None
    return new_lo, new_hi


def root_digits(k: int, digits: int, max_bits: int = DEFAULT_MAX_BITS) -> str:
    """
    alpha(k) truncated to `digits` decimals.

    The enclosure is tightened until both endpoints truncate to the same
    string, so the result is the true truncation, not an approximation.

    Raises:
        DomainError: If k < 2 or digits < 1
        ResourceError: If the precision cap is reached first
    """
    if digits < 1:
        raise DomainError(f"digits must be at least 1, got {digits}")

    def attempt(bits: int) -> str:
        cert = dominant_root(k, bits, max_bits)
        lo = cert.alpha.decimal_lower(digits)
        if lo != fixed_decimal(cert.alpha.hi, digits, upward=False):
            raise InsufficientPrecision(f"alpha({k}) straddles a digit boundary at {bits} bits")
        return lo

    policy = EscalationPolicy(initial_bits=max(64, int(digits * 3.33) + 16), max_bits=max_bits)
    return escalate(attempt, policy, label=f"root k={k}")
