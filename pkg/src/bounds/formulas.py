"""Closed-form bounds: Matveev, the Guz lemma, and the n-bounds used downstream.

Upper bounds are evaluated in MPFR with rounding toward +inf; literal
constants such as 1.4e27 enter as exact rationals.
"""

from typing import List, Union

import gmpy2
from gmpy2 import mpfr, mpq

from src.analytic.constants import height_bounds
from src.analytic.interval import float_up, rounding, to_mpq
from src.errors import DomainError, PreconditionError
from src.models.schemas import MatveevInstance

BITS = 128

Real = Union[int, float, "mpfr", "mpq"]

MATVEEV_FACTOR = mpq(14, 10)
LEMMA41A_FACTOR = mpq(14, 10) * 10**27
T11_DIVISOR = 86


def _up(value: Real) -> "mpfr":
    with rounding(BITS, gmpy2.RoundUp):
        return mpfr(to_mpq(value))


def matveev_log_lower_bound(inst: MatveevInstance) -> "mpfr":
    """
    Magnitude M with log|Gamma| > -M from Matveev's theorem.

    M = 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * (1 + log B) * prod(A_i),
    rounded up.
    """
    t, D = inst.t, inst.D
    with rounding(BITS, gmpy2.RoundUp):
        value = mpfr(MATVEEV_FACTOR) * mpfr(30) ** (t + 3)
        value *= mpfr(t) ** 4 * gmpy2.sqrt(mpfr(t))
        value *= mpfr(D) ** 2 * (1 + gmpy2.log(mpfr(D)))
        value *= 1 + gmpy2.log(mpfr(inst.B))
        for a in inst.A:
            value *= mpfr(a)
    return value


def guz_bound(m: int, T: Real) -> "mpfr":
    """
    Upper bound 2^m * T * (log T)^m for x with x / (log x)^m < T.

    Raises:
        PreconditionError: If m < 1 or T <= (4m^2)^m
    """
    if m < 1:
        raise PreconditionError(f"m must be at least 1, got {m}")
    if not to_mpq(T) > (4 * m * m) ** m:
        raise PreconditionError(f"T must exceed (4m^2)^m = {(4 * m * m) ** m}, got {T}")
    with rounding(BITS, gmpy2.RoundUp):
        t = mpfr(to_mpq(T))
        return mpfr(2) ** m * t * gmpy2.log(t) ** m


def lemma31_real(s: Real, k: Real) -> "mpfr":
    """35 s log s + 3 s log k + 3 log(12 s + k) for real s, k >= 2."""
    with rounding(BITS, gmpy2.RoundUp):
        s_, k_ = mpfr(to_mpq(s)), mpfr(to_mpq(k))
        return 35 * s_ * gmpy2.log(s_) + 3 * s_ * gmpy2.log(k_) + 3 * gmpy2.log(12 * s_ + k_)


def lemma31_bound(s: int, k: int) -> "mpfr":
    """Upper bound for log n when L_n^(k) has its prime factors among the first s primes."""
    if s < 2:
        raise DomainError(f"s must be at least 2, got {s}")
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    return lemma31_real(s, k)


def lemma41a_bound(k: Real) -> "mpfr":
    """n < 1.4e27 * k^7 * (log k)^3 for 7-smooth L_n^(k) with n >= k + 1."""
    if to_mpq(k) < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    with rounding(BITS, gmpy2.RoundUp):
        k_ = mpfr(to_mpq(k))
        return mpfr(LEMMA41A_FACTOR) * k_**7 * gmpy2.log(k_) ** 3


def t11_threshold(n: int) -> "mpfr":
    """(1/86) log log n, rounded up."""
    if n <= 2:
        raise DomainError(f"log log n is not positive for n = {n}")
    with rounding(BITS, gmpy2.RoundUp):
        return gmpy2.log(gmpy2.log(mpfr(n))) / T11_DIVISOR


def case_split_n(k: int) -> "mpfr":
    """2^(k/2), the n-threshold between the two branches of the argument."""
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    with rounding(max(BITS, k), gmpy2.RoundUp):
        if k % 2 == 0:
            return mpfr(2) ** (k // 2)
        return mpfr(2) ** (k // 2) * gmpy2.sqrt(mpfr(2))


def first_primes(s: int) -> List[int]:
    primes, p = [], 1
    while len(primes) < s:
        p = int(gmpy2.next_prime(p))
        primes.append(p)
    return primes


def small_k_instance(s: int, k: int, n: int) -> MatveevInstance:
    """
    Matveev data for the form with s primes, 2*alpha - 1, alpha and f_k(alpha).

    t = s + 3, D = k, B = n + 1; A-values are k times the height bounds.
    """
    if s < 2:
        raise DomainError(f"s must be at least 2, got {s}")
    p_s = first_primes(s)[-1]
    heights = height_bounds(k)
    with rounding(BITS, gmpy2.RoundUp):
        a_prime = k * gmpy2.log(mpfr(p_s))
        a_2am1 = k * heights.h_2am1
        a_alpha = k * heights.h_alpha
        a_f = k * heights.h_f
    values = [float_up(a_prime)] * s + [float_up(a_2am1), float_up(a_alpha), float_up(a_f)]
    return MatveevInstance(t=s + 3, D=k, B=n + 1, A=values)


def prime_only_instance(s: int, n: int) -> MatveevInstance:
    """Matveev data for a form in the logarithms of the first s primes (D = 1)."""
    if s < 2:
        raise DomainError(f"s must be at least 2, got {s}")
    p_s = first_primes(s)[-1]
    with rounding(BITS, gmpy2.RoundUp):
        a = gmpy2.log(mpfr(p_s))
    return MatveevInstance(t=s, D=1, B=n + 1, A=[float_up(a)] * s)
