"""Smooth parts and largest prime factors."""

import logging
from functools import lru_cache
from typing import List, Optional, Tuple

import gmpy2
from gmpy2 import mpz

from src.errors import DomainError, ResourceError
from src.models.schemas import SmoothFactorization

logger = logging.getLogger(__name__)

SMOOTH_PRIMES = (2, 3, 5, 7)
DEFAULT_TRIAL_LIMIT = 10**6
DEFAULT_RHO_ITERATIONS = 2 * 10**6
DEFAULT_MAX_BITS = 512


def smooth_part(n: int) -> SmoothFactorization:
    """
    Split n into 2^a * 3^b * 5^c * 7^d * remainder.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"smooth_part needs n >= 1, got {n}")
    rest = mpz(n)
    exponents = []
    for p in SMOOTH_PRIMES:
        if rest % p:
            exponents.append(0)
            continue
        rest, e = gmpy2.remove(rest, p)
        exponents.append(int(e))
    a, b, c, d = exponents
    return SmoothFactorization(a=a, b=b, c=c, d=d, remainder=int(rest))


def is_smooth(n: int) -> bool:
    """True when n >= 1 has no prime factor above 7."""
    return smooth_part(n).is_smooth


@lru_cache(maxsize=4)
def _primes_up_to(limit: int) -> Tuple[int, ...]:
    primes: List[int] = []
    p = 2
    while p <= limit:
        primes.append(p)
        p = int(gmpy2.next_prime(p))
    return tuple(primes)


def _brent(n: mpz, budget: int) -> Optional[mpz]:
    """A nontrivial factor of the odd composite n, or None when the budget runs out."""
    batch = 128
    spent = 0
    c = mpz(1)
    while spent < budget:
        y, r, q, g = mpz(2), 1, mpz(1), mpz(1)
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gmpy2.gcd(q, n)
                k += batch
            spent += r
            r *= 2
        if g == n:
            # the batched product overshot; step back one term at a time
            g = mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        c += 1
    return None


def largest_prime_factor(
    n: int,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> int:
    """
    Largest prime factor P(n), with P(0) = P(1) = P(-1) = 1.

    Trial division up to trial_limit, then Brent's rho on what is left;
    cofactors are declared prime by a strong probable-prime test.

    Args:
        n: Any integer
        trial_limit: Bound for trial division
        rho_iterations: Iteration budget per cofactor for the rho method
        max_bits: Inputs above this size are refused

    Raises:
        ResourceError: If n is too large or a cofactor resists the rho budget
    """
    rest = mpz(abs(n))
    if rest <= 1:
        return 1
    if rest.bit_length() > max_bits:
        raise ResourceError(f"{rest.bit_length()}-bit input exceeds the {max_bits}-bit factoring cap")

    largest = 1
    for p in _primes_up_to(trial_limit):
        if p * p > rest:
            break
        if rest % p == 0:
            rest, _ = gmpy2.remove(rest, p)
            largest = p
    if rest == 1:
        return largest
    if rest < (trial_limit + 1) ** 2:
        return max(largest, int(rest))

    pending = [rest]
    while pending:
        m = pending.pop()
        if gmpy2.is_prime(m, 30):
            largest = max(largest, int(m))
            continue
        factor = _brent(m, rho_iterations)
        if factor is None:
            raise ResourceError(f"cofactor {int(m)} not factored within {rho_iterations} rho iterations")
        logger.debug("rho split %d-bit cofactor", m.bit_length())
        pending += [factor, m // factor]
    return largest
