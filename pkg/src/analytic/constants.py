"""Constants derived from the dominant root and the Binet-like residual."""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import gmpy2
from gmpy2 import mpfr, mpq

from src.analytic.interval import RealInterval, rounding
from src.analytic.roots import RootCertificate, dominant_root
from src.errors import DomainError, InsufficientPrecision
from src.sequence.window import term
from src.utils.escalation import DEFAULT_MAX_BITS, EscalationPolicy, escalate

logger = logging.getLogger(__name__)

BINET_BOUND = mpq(3, 2)


def f_k(k: int, x):
    """f_k(x) = (x - 1) / (2 + (k + 1)(x - 2)), exact for rational x."""
    return (x - 1) / (2 + (k + 1) * (x - 2))


@dataclass(frozen=True)
class DerivedConstants:
    """Enclosures of alpha, f_k(alpha), 2*alpha - 1 and their logarithms."""

    k: int
    precision_bits: int
    alpha: RealInterval
    f_alpha: RealInterval
    two_alpha_minus_one: RealInterval
    log_alpha: RealInterval
    log_f_alpha: RealInterval
    log_two_alpha_minus_one: RealInterval

    def invariant_failures(self) -> list[str]:
        """Known analytic facts that the enclosures must certify."""
        failures = []
        if not self.f_alpha.within(mpq(1, 2), mpq(3, 4)):
            failures.append(f"k={self.k}: f_k(alpha) not certified inside (1/2, 3/4)")
        if not self.two_alpha_minus_one.within(3 - mpq(4, 2**self.k), 3):
            failures.append(f"k={self.k}: 2*alpha-1 not certified inside (3-4/2^k, 3)")
        if not (1 / self.log_alpha).certainly_below(mpq(21, 10)):
            failures.append(f"k={self.k}: 1/log(alpha) not certified below 2.1")
        return failures

    def to_payload(self) -> dict:
        return {
            "k": self.k,
            "precision_bits": self.precision_bits,
            "alpha": self.alpha.to_payload(),
            "f_alpha": self.f_alpha.to_payload(),
            "two_alpha_minus_one": self.two_alpha_minus_one.to_payload(),
            "log_alpha": self.log_alpha.to_payload(),
            "log_f_alpha": self.log_f_alpha.to_payload(),
            "log_two_alpha_minus_one": self.log_two_alpha_minus_one.to_payload(),
        }


def derived_constants(
    cert: RootCertificate,
    precision_bits: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> DerivedConstants:
    """
    Enclose f_k(alpha), 2*alpha - 1 and their logarithms to 2^-precision_bits.

    The root certificate is refined when it is too wide. f_k is decreasing on
    the bracket, so the images of the root endpoints bound f_k(alpha).

    Raises:
        ResourceError: If the precision cap is reached
    """
    k = cert.k

    def attempt(extra: int) -> DerivedConstants:
        root = cert
        needed = precision_bits + k.bit_length() + extra
        if root.bits < needed:
            logger.debug("k=%d: refining root certificate to %d bits", k, needed)
            root = dominant_root(k, needed, max_bits=max_bits)
        consts = _evaluate(root, precision_bits + extra)
        for name in ("f_alpha", "two_alpha_minus_one", "log_alpha", "log_f_alpha",
                     "log_two_alpha_minus_one"):
            if not getattr(consts, name).is_narrower_than(precision_bits):
                raise InsufficientPrecision(f"{name} wider than 2^-{precision_bits}")
        return consts

    policy = EscalationPolicy(initial_bits=8, max_bits=max(max_bits - precision_bits, 8))
    return escalate(attempt, policy, requested_bits=8, label=f"derived constants k={k}")


def _evaluate(root: RootCertificate, bits: int) -> DerivedConstants:
    k = root.k
    lo, hi = root.alpha.lower(), root.alpha.upper()
    alpha = RealInterval.from_bounds(lo, hi, bits)
    f_alpha = RealInterval.from_bounds(f_k(k, hi), f_k(k, lo), bits)
    two_alpha_minus_one = RealInterval.from_bounds(2 * lo - 1, 2 * hi - 1, bits)
    return DerivedConstants(
        k=k,
        precision_bits=bits,
        alpha=alpha,
        f_alpha=f_alpha,
        two_alpha_minus_one=two_alpha_minus_one,
        log_alpha=alpha.log(),
        log_f_alpha=f_alpha.log(),
        log_two_alpha_minus_one=two_alpha_minus_one.log(),
    )


def constants_for(k: int, precision_bits: int, max_bits: int = DEFAULT_MAX_BITS) -> DerivedConstants:
    """Root certificate and derived constants in one call."""
    root = dominant_root(k, precision_bits + k.bit_length() + 8, max_bits=max_bits)
    return derived_constants(root, precision_bits, max_bits=max_bits)


def binet_residual(
    cert: RootCertificate,
    consts: Optional[DerivedConstants],
    n: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> RealInterval:
    """
    Enclose L_n^(k) - f_k(alpha)(2*alpha - 1)*alpha^(n-1).

    Precision is doubled until the enclosure certifies |residual| < 3/2.

    Raises:
        DomainError: If n < 2 - k
        ResourceError: If the precision cap is reached first
    """
    k = cert.k
    if n < 2 - k:
        raise DomainError(f"index {n} is below 2 - k = {2 - k}")
    value = term(k, n)

    def attempt(bits: int) -> RealInterval:
        current = consts
        if current is None or current.precision_bits < bits:
            current = derived_constants(cert, bits, max_bits=max_bits)
        dominant = current.f_alpha * current.two_alpha_minus_one * current.alpha ** (n - 1)
        residual = RealInterval.exact(value, dominant.precision_bits) - dominant
        if not residual.abs_upper() < BINET_BOUND:
            raise InsufficientPrecision(f"|residual| at n={n} not certified below 3/2")
        return residual

    start = max(192, abs(n) + 64, consts.precision_bits if consts else 0)
    policy = EscalationPolicy(initial_bits=start, max_bits=max_bits)
    return escalate(attempt, policy, label=f"binet residual k={k} n={n}")


class HeightBounds(NamedTuple):
    """Closed-form upper bounds on logarithmic heights."""

    h_f: "mpfr"
    h_alpha: "mpfr"
    h_2am1: "mpfr"


def height_bounds(k: int, bits: int = 64) -> HeightBounds:
    """
    Height bounds used to assemble Matveev A-values.

    Returns 3 log k for f_k(alpha), 0.7/k for alpha and 3/k for 2*alpha - 1,
    all rounded up.
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    with rounding(bits, gmpy2.RoundUp):
        h_f = 3 * gmpy2.log(k)
        h_alpha = mpfr(mpq(7, 10)) / k
        h_2am1 = mpfr(3) / k
    return HeightBounds(h_f, h_alpha, h_2am1)
