"""Outward-rounded real intervals on top of gmpy2's MPFR.

Every operation rounds the lower endpoint toward -inf and the upper endpoint
toward +inf, so an interval computed from enclosures always encloses the true
result. Exact inputs (int, Fraction, mpz, mpq) are converted with the same
directed rounding and re-checked against the exact value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from src.errors import DomainError

Exact = Union[int, Fraction, "mpz", "mpq"]
Operand = Union["RealInterval", int, Fraction, "mpz", "mpq"]


def rounding(bits: int, direction) -> "gmpy2.context":
    """Return a context manager that sets precision and rounding mode."""
    return gmpy2.context(gmpy2.get_context(), precision=bits, round=direction)


def to_mpq(value) -> "mpq":
    """Exact conversion of ints, Fractions, mpz, mpq and finite mpfr to mpq."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def round_down(value, bits: int) -> "mpfr":
    """Largest representable value at `bits` not above the exact value."""
    q = to_mpq(value)
    with rounding(bits, gmpy2.RoundDown):
        x = mpfr(q)
        if mpq(x) > q:
            x = gmpy2.next_below(x)
    return x


def round_up(value, bits: int) -> "mpfr":
    """Smallest representable value at `bits` not below the exact value."""
    q = to_mpq(value)
    with rounding(bits, gmpy2.RoundUp):
        x = mpfr(q)
        if mpq(x) < q:
            x = gmpy2.next_above(x)
    return x


def floor_exact(x: "mpfr") -> int:
    """Floor of a finite mpfr, computed exactly."""
    q = mpq(x)
    return int(mpz(q.numerator) // mpz(q.denominator))


def _directed_int(num: int, den: int, up: bool) -> int:
    """floor(num / den), or ceil when `up`; den > 0."""
    return -((-num) // den) if up else num // den


def fixed_decimal(value, digits: int, upward: bool) -> str:
    """
    Exact value rounded to `digits` decimals toward +inf (upward) or -inf.

    Computed from the exact rational, so the string is a certified bound.
    """
    q = to_mpq(value)
    num, den = int(q.numerator), int(q.denominator)
    scaled = _directed_int(num * 10**digits, den, upward)
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + body
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def _at_least_power(num: int, den: int, e: int) -> bool:
    """num / den >= 10^e for positive num, den."""
    if e >= 0:
        return num >= den * 10**e
    return num * 10**-e >= den


def scientific_decimal(value, digits: int, upward: bool) -> str:
    """
    Exact value in d.ddd...e+XX form with `digits` decimals, rounded toward
    +inf (upward) or -inf.
    """
    q = to_mpq(value)
    if q == 0:
        return f"{0:.{digits}e}"
    negative = q < 0
    num, den = abs(int(q.numerator)), int(q.denominator)

    e = int((num.bit_length() - den.bit_length()) * 0.30102999566398)
    while not _at_least_power(num, den, e):
        e -= 1
    while _at_least_power(num, den, e + 1):
        e += 1

    shift = digits - e
    m_num = num * 10 ** max(shift, 0)
    m_den = den * 10 ** max(-shift, 0)
    # the magnitude moves away from zero when rounding outward on its side
    mantissa = _directed_int(m_num, m_den, upward != negative)
    if mantissa == 10 ** (digits + 1):
        mantissa //= 10
        e += 1

    text = str(mantissa)
    body = text[0] + ("." + text[1:] if digits else "")
    return f"{'-' if negative else ''}{body}e{e:+03d}"


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] with MPFR endpoints."""

    lo: "mpfr"
    hi: "mpfr"
    precision_bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def exact(cls, value: Exact, bits: int) -> "RealInterval":
        """Tightest interval at `bits` containing an exact value."""
        return cls(round_down(value, bits), round_up(value, bits), bits)

    @classmethod
    def from_bounds(cls, lo: Exact, hi: Exact, bits: int) -> "RealInterval":
        """Interval containing the exact closed range [lo, hi]."""
        return cls(round_down(lo, bits), round_up(hi, bits), bits)

    @staticmethod
    def _coerce(other: Operand, bits: int) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        return RealInterval.exact(other, bits)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def width(self) -> "mpfr":
        with rounding(self.precision_bits, gmpy2.RoundUp):
            return self.hi - self.lo

    @property
    def midpoint(self) -> "mpq":
        return (mpq(self.lo) + mpq(self.hi)) / 2

    def lower(self) -> "mpq":
        return mpq(self.lo)

    def upper(self) -> "mpq":
        return mpq(self.hi)

    def contains(self, value: Exact) -> bool:
        q = to_mpq(value)
        return mpq(self.lo) <= q <= mpq(self.hi)

    def within(self, lo: Exact, hi: Exact) -> bool:
        """True when the whole interval lies strictly inside (lo, hi)."""
        return to_mpq(lo) < mpq(self.lo) and mpq(self.hi) < to_mpq(hi)

    def certainly_below(self, value: Exact) -> bool:
        return mpq(self.hi) < to_mpq(value)

    def certainly_above(self, value: Exact) -> bool:
        return mpq(self.lo) > to_mpq(value)

    def abs_upper(self) -> "mpfr":
        return max(abs(self.lo), abs(self.hi))

    def is_narrower_than(self, bits: int) -> bool:
        """True when the width is at most 2^-bits."""
        return mpq(self.hi) - mpq(self.lo) <= mpq(1, 2**bits)

    def floor(self) -> Optional[int]:
        """Common floor of every point of the interval, or None if ambiguous."""
        lo, hi = floor_exact(self.lo), floor_exact(self.hi)
        return lo if lo == hi else None

    def intersect(self, other: "RealInterval") -> Optional["RealInterval"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return RealInterval(lo, hi, max(self.precision_bits, other.precision_bits))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo, self.precision_bits)

    def __add__(self, other: Operand) -> "RealInterval":
        other = self._coerce(other, self.precision_bits)
        bits = max(self.precision_bits, other.precision_bits)
        with rounding(bits, gmpy2.RoundDown):
            lo = self.lo + other.lo
        with rounding(bits, gmpy2.RoundUp):
            hi = self.hi + other.hi
        return RealInterval(lo, hi, bits)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "RealInterval":
        other = self._coerce(other, self.precision_bits)
        bits = max(self.precision_bits, other.precision_bits)
        with rounding(bits, gmpy2.RoundDown):
            lo = self.lo - other.hi
        with rounding(bits, gmpy2.RoundUp):
            hi = self.hi - other.lo
        return RealInterval(lo, hi, bits)

    def __rsub__(self, other: Operand) -> "RealInterval":
        return self._coerce(other, self.precision_bits) - self

    def __mul__(self, other: Operand) -> "RealInterval":
        other = self._coerce(other, self.precision_bits)
        bits = max(self.precision_bits, other.precision_bits)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        with rounding(bits, gmpy2.RoundDown):
            lo = min(a * b for a, b in pairs)
        with rounding(bits, gmpy2.RoundUp):
            hi = max(a * b for a, b in pairs)
        return RealInterval(lo, hi, bits)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "RealInterval":
        other = self._coerce(other, self.precision_bits)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        bits = max(self.precision_bits, other.precision_bits)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        with rounding(bits, gmpy2.RoundDown):
            lo = min(a / b for a, b in pairs)
        with rounding(bits, gmpy2.RoundUp):
            hi = max(a / b for a, b in pairs)
        return RealInterval(lo, hi, bits)

    def __rtruediv__(self, other: Operand) -> "RealInterval":
        return self._coerce(other, self.precision_bits) / self

    def __pow__(self, exponent: int) -> "RealInterval":
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        bits = self.precision_bits
        if exponent == 0:
            return RealInterval.exact(1, bits)
        if exponent < 0:
            return 1 / (self ** (-exponent))
        if self.lo >= 0 or exponent % 2 == 1:
            lo_base, hi_base = self.lo, self.hi
        elif self.hi <= 0:
            lo_base, hi_base = -self.hi, -self.lo
        else:
            with rounding(bits, gmpy2.RoundUp):
                hi = self.abs_upper() ** exponent
            return RealInterval(mpfr(0), hi, bits)
        with rounding(bits, gmpy2.RoundDown):
            lo = lo_base**exponent
        with rounding(bits, gmpy2.RoundUp):
            hi = hi_base**exponent
        return RealInterval(lo, hi, bits)

    def log(self) -> "RealInterval":
        if self.lo <= 0:
            raise DomainError("logarithm of an interval reaching zero or below")
        with rounding(self.precision_bits, gmpy2.RoundDown):
            lo = gmpy2.log(self.lo)
        with rounding(self.precision_bits, gmpy2.RoundUp):
            hi = gmpy2.log(self.hi)
        return RealInterval(lo, hi, self.precision_bits)

    def sqrt(self) -> "RealInterval":
        if self.lo < 0:
            raise DomainError("square root of an interval reaching below zero")
        with rounding(self.precision_bits, gmpy2.RoundDown):
            lo = gmpy2.sqrt(self.lo)
        with rounding(self.precision_bits, gmpy2.RoundUp):
            hi = gmpy2.sqrt(self.hi)
        return RealInterval(lo, hi, self.precision_bits)

    # ------------------------------------------------------------------
    # output
    # ------------------------------------------------------------------

    def decimal_lower(self, digits: int) -> str:
        """Lower endpoint truncated toward -inf to `digits` decimals."""
        return fixed_decimal(self.lo, digits, upward=False)

    def decimal_upper(self, digits: int) -> str:
        """Upper endpoint rounded toward +inf to `digits` decimals."""
        return fixed_decimal(self.hi, digits, upward=True)

    def to_payload(self, digits: Optional[int] = None) -> dict:
        """Decimal-string rendering with outward rounding."""
        if digits is None:
            digits = max(20, int(self.precision_bits * 0.30103) + 2)
        return {
            "lo": scientific_decimal(self.lo, digits, upward=False),
            "hi": scientific_decimal(self.hi, digits, upward=True),
            "precision_bits": self.precision_bits,
        }

    def __repr__(self) -> str:
        return (
            f"RealInterval([{scientific_decimal(self.lo, 12, upward=False)}, "
            f"{scientific_decimal(self.hi, 12, upward=True)}], {self.precision_bits} bits)"
        )


def _nearest_float(q: "mpq") -> float:
    try:
        return float(Fraction(int(q.numerator), int(q.denominator)))
    except OverflowError:
        return math.inf if q > 0 else -math.inf


def float_up(value) -> float:
    """Smallest double not below an exact or mpfr value."""
    q = to_mpq(value)
    f = _nearest_float(q)
    if math.isfinite(f) and mpq(f) < q:
        f = math.nextafter(f, math.inf)
    return f


def float_down(value) -> float:
    """Largest double not above an exact or mpfr value."""
    q = to_mpq(value)
    f = _nearest_float(q)
    if math.isfinite(f) and mpq(f) > q:
        f = math.nextafter(f, -math.inf)
    return f
