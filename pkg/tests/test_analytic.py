"""Tests for the dominant root, derived constants and height bounds."""

from fractions import Fraction

import pytest
from gmpy2 import mpq

from src.analytic import (
    binet_residual,
    constants_for,
    derived_constants,
    dominant_root,
    height_bounds,
    psi_eval,
    psi_sign,
    root_digits,
)
from src.analytic.constants import f_k
from src.errors import DomainError, ResourceError

GOLDEN = Fraction(16180339887498948482, 10**19)
TRIBONACCI = Fraction(18392867552141611325, 10**19)


def bisection_oracle(k, bits):
    """Independent root enclosure by plain bisection on Psi_k."""
    lo, hi = Fraction(3, 2), Fraction(2)
    while hi - lo > Fraction(1, 2**bits):
        mid = (lo + hi) / 2
        if psi_eval(k, mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


class TestPsi:
    """Tests for exact evaluation of Psi_k."""

    def test_values(self):
        """Psi_k at small rationals."""
        assert psi_eval(2, 2) == 1
        assert psi_eval(3, 2) == 1
        assert psi_eval(2, Fraction(3, 2)) == Fraction(-1, 4)

    def test_at_one(self):
        """x = 1 uses the direct form: 1 - k."""
        assert psi_eval(4, 1) == -3

    def test_sign(self):
        """Sign changes across the dominant root."""
        assert psi_sign(3, Fraction(18, 10)) < 0
        assert psi_sign(3, Fraction(19, 10)) > 0

    def test_k_below_two(self):
        """k must be at least 2."""
        with pytest.raises(DomainError):
            psi_eval(1, 2)


class TestDominantRoot:
    """Tests for certified root enclosures."""

    def test_golden_ratio(self):
        """k = 2 encloses the golden ratio."""
        cert = dominant_root(2, 64)
        assert abs(cert.alpha.midpoint - mpq(GOLDEN)) < mpq(1, 10**18)
        assert cert.alpha.lower() > mpq(3, 2)
        assert cert.check()

    def test_tribonacci_against_oracle(self):
        """k = 3 agrees with an independent bisection."""
        cert = dominant_root(3, 64)
        lo, hi = bisection_oracle(3, 64)
        assert cert.alpha.lower() <= hi and lo <= cert.alpha.upper()
        assert abs(cert.alpha.midpoint - mpq(TRIBONACCI)) < mpq(1, 10**18)

    def test_width_and_bracket(self):
        """Width reaches the requested precision inside (2(1 - 2^-k), 2)."""
        for k in (2, 5, 17, 100):
            cert = dominant_root(k, 80)
            assert cert.alpha.is_narrower_than(80)
            assert cert.alpha.within(2 - mpq(1, 2 ** (k - 1)), 2)
            assert cert.sign_lo < 0 < cert.sign_hi

    def test_large_k(self):
        """Bracket for k = 1000 is tight, but the certificate still sits inside."""
        cert = dominant_root(1000, 64)
        assert cert.check()

    def test_precision_cap(self):
        """Requests above the cap are a resource error."""
        with pytest.raises(ResourceError):
            dominant_root(3, 4096, max_bits=1024)

    def test_invalid_k(self):
        """k < 2 is a domain error."""
        with pytest.raises(DomainError):
            dominant_root(1, 64)

    def test_payload(self):
        """Payload carries the interval and the endpoint signs."""
        payload = dominant_root(2, 64).to_payload()
        assert payload["k"] == 2
        assert payload["sign_lo"] == -1
        assert payload["sign_hi"] == 1

    def test_payload_encloses_golden_ratio(self):
        """The decimal endpoints bracket the root of x^2 - x - 1."""
        alpha = dominant_root(2, 64).to_payload()["alpha"]
        lo, hi = Fraction(alpha["lo"]), Fraction(alpha["hi"])
        assert lo < hi
        assert lo * lo - lo - 1 < 0 < hi * hi - hi - 1
        assert alpha["lo"].startswith("1.61803398874989")


class TestRootDigits:
    """Tests for truncated decimal digits."""

    def test_golden_ratio_30_digits(self):
        """Truncated, not rounded: the 31st digit is 6."""
        assert root_digits(2, 30) == "1.618033988749894848204586834365"

    def test_tribonacci(self):
        """Digits agree with the known constant."""
        assert root_digits(3, 20).startswith("1.8392867552141611325")

    def test_invalid(self):
        """digits and k are validated."""
        with pytest.raises(DomainError):
            root_digits(2, 0)
        with pytest.raises(DomainError):
            root_digits(1, 10)


class TestDerivedConstants:
    """Tests for f_k(alpha), 2 alpha - 1 and their logarithms."""

    def test_f_at_two(self):
        """f_k(2) = 1/2 for every k."""
        for k in (2, 3, 10, 500):
            assert f_k(k, Fraction(2)) == Fraction(1, 2)

    def test_k2(self):
        """f_2(alpha) = alpha / sqrt(5) = 0.7236..."""
        consts = constants_for(2, 64)
        assert consts.f_alpha.within(Fraction(72360, 100000), Fraction(72361, 100000))
        assert consts.invariant_failures() == []

    def test_k3(self):
        """2 alpha - 1 = 2.6785735... inside (2.5, 3)."""
        consts = derived_constants(dominant_root(3, 128), 64)
        assert consts.two_alpha_minus_one.within(Fraction(26785, 10000), Fraction(26786, 10000))
        assert consts.two_alpha_minus_one.within(Fraction(5, 2), 3)
        assert consts.f_alpha.is_narrower_than(64)

    def test_refines_wide_certificate(self):
        """A coarse root certificate is refined on demand."""
        coarse = dominant_root(5, 16)
        consts = derived_constants(coarse, 100)
        assert consts.log_alpha.is_narrower_than(100)

    def test_invariants_over_range(self):
        """f_k(alpha) in (1/2, 3/4) and 1/log(alpha) < 2.1."""
        for k in range(2, 40):
            assert constants_for(k, 64).invariant_failures() == []


class TestBinet:
    """Tests for the residual of the dominant term."""

    @pytest.mark.parametrize("k,n", [(2, 10), (3, 7), (2, 1), (5, 50), (4, -1)])
    def test_residual_below_three_halves(self, k, n):
        """|L_n - f_k(alpha)(2 alpha - 1) alpha^(n-1)| < 3/2."""
        cert = dominant_root(k, 128)
        residual = binet_residual(cert, None, n)
        assert residual.within(Fraction(-3, 2), Fraction(3, 2))

    def test_reuses_constants(self):
        """Precomputed constants are used when precise enough."""
        cert = dominant_root(2, 256)
        consts = derived_constants(cert, 192)
        assert binet_residual(cert, consts, 10).within(-1, 1)

    def test_index_below_window(self):
        """n < 2 - k is a domain error."""
        with pytest.raises(DomainError):
            binet_residual(dominant_root(3, 64), None, -5)


class TestHeightBounds:
    """Tests for closed-form height bounds."""

    def test_values(self):
        """3 log k, 0.7 / k and 3 / k."""
        h2 = height_bounds(2)
        assert 2.079 < float(h2.h_f) < 2.080
        assert float(h2.h_2am1) >= 1.5
        assert 0.07 <= float(height_bounds(10).h_alpha) < 0.0700001

    def test_invalid_k(self):
        """k < 2 is a domain error."""
        with pytest.raises(DomainError):
            height_bounds(1)
