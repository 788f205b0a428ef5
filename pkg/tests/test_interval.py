"""Tests for outward-rounded intervals."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpq

from src.analytic.interval import (
    RealInterval,
    fixed_decimal,
    float_down,
    float_up,
    round_down,
    round_up,
    scientific_decimal,
)
from src.errors import DomainError


class TestDirectedRounding:
    """Tests for exact-to-MPFR conversion."""

    def test_one_third(self):
        """1/3 is bracketed from both sides at 53 bits."""
        lo, hi = round_down(Fraction(1, 3), 53), round_up(Fraction(1, 3), 53)
        assert mpq(lo) < mpq(1, 3) < mpq(hi)

    def test_exact_value_is_kept(self):
        """Representable values are not widened."""
        assert mpq(round_down(5, 53)) == 5
        assert mpq(round_up(5, 53)) == 5

    def test_float_helpers(self):
        """Doubles bracket the exact value."""
        q = mpq(1, 10)
        assert mpq(float_down(q)) <= q <= mpq(float_up(q))
        assert float_up(mpq(3)) == 3.0


class TestRealInterval:
    """Tests for interval arithmetic."""

    def test_exact_contains(self):
        """An exact interval contains its value."""
        x = RealInterval.exact(Fraction(2, 7), 64)
        assert x.contains(Fraction(2, 7))
        assert x.is_narrower_than(60)

    def test_empty_interval_rejected(self):
        """lo > hi is invalid."""
        with pytest.raises(ValueError):
            RealInterval(gmpy2.mpfr(2), gmpy2.mpfr(1), 53)

    def test_arithmetic_encloses(self):
        """(1/3 + 1/7) * 3 - 1/7 / 2 encloses the exact value."""
        a = RealInterval.exact(Fraction(1, 3), 64)
        b = RealInterval.exact(Fraction(1, 7), 64)
        result = (a + b) * 3 - b / 2
        exact = (Fraction(1, 3) + Fraction(1, 7)) * 3 - Fraction(1, 14)
        assert result.contains(exact)

    def test_reflected_operators(self):
        """int op interval works on both sides."""
        x = RealInterval.exact(3, 64)
        assert (1 - x).contains(-2)
        assert (2 * x).contains(6)
        assert (1 / x).contains(Fraction(1, 3))

    def test_division_by_zero_interval(self):
        """Divisor intervals containing zero are rejected."""
        x = RealInterval.from_bounds(-1, 1, 64)
        with pytest.raises(ZeroDivisionError):
            RealInterval.exact(1, 64) / x

    def test_even_power_of_straddling_interval(self):
        """[-2, 1]^2 = [0, 4]."""
        x = RealInterval.from_bounds(-2, 1, 64)
        sq = x**2
        assert sq.lower() == 0
        assert sq.upper() == 4

    def test_negative_power(self):
        """x^-2 = 1 / x^2."""
        x = RealInterval.exact(2, 64)
        assert (x**-2).contains(Fraction(1, 4))

    def test_log_sqrt(self):
        """Transcendental functions enclose known values."""
        two = RealInterval.exact(2, 128)
        assert two.log().within(Fraction(6931, 10000), Fraction(6932, 10000))
        assert two.sqrt().within(Fraction(14142, 10000), Fraction(14143, 10000))

    def test_log_of_nonpositive(self):
        """log needs a positive interval."""
        with pytest.raises(DomainError):
            RealInterval.from_bounds(0, 1, 64).log()

    def test_floor(self):
        """Floor is returned only when unambiguous."""
        assert RealInterval.from_bounds(Fraction(7, 2), Fraction(37, 10), 64).floor() == 3
        assert RealInterval.from_bounds(Fraction(-1, 2), Fraction(-1, 4), 64).floor() == -1
        assert RealInterval.from_bounds(Fraction(29, 10), Fraction(31, 10), 64).floor() is None

    def test_comparisons(self):
        """certainly_below / certainly_above / within."""
        x = RealInterval.from_bounds(1, 2, 64)
        assert x.certainly_below(3)
        assert not x.certainly_below(2)
        assert x.certainly_above(0)
        assert x.within(0, 3)
        assert not x.within(1, 3)

    def test_intersect(self):
        """Intersection of overlapping and disjoint intervals."""
        a = RealInterval.from_bounds(0, 2, 64)
        b = RealInterval.from_bounds(1, 3, 64)
        c = a.intersect(b)
        assert c.lower() == 1 and c.upper() == 2
        assert a.intersect(RealInterval.from_bounds(5, 6, 64)) is None

    def test_decimal_rendering_is_outward(self):
        """Truncated lower and rounded-up upper endpoints."""
        x = RealInterval.exact(Fraction(2, 3), 128)
        assert x.decimal_lower(5) == "0.66666"
        assert x.decimal_upper(5) == "0.66667"

    def test_payload(self):
        """Payload endpoints parse back as decimals that enclose the value."""
        payload = RealInterval.exact(Fraction(1, 3), 64).to_payload(10)
        assert set(payload) == {"lo", "hi", "precision_bits"}
        assert payload["precision_bits"] == 64
        assert payload["lo"] == "3.3333333333e-01"
        assert payload["hi"] == "3.3333333334e-01"
        assert Fraction(payload["lo"]) <= Fraction(1, 3) <= Fraction(payload["hi"])

    def test_payload_of_log(self):
        """Default digits follow the precision; log 2 stays enclosed."""
        log2 = RealInterval.exact(2, 256).log()
        payload = log2.to_payload()
        lo, hi = Fraction(payload["lo"]), Fraction(payload["hi"])
        assert lo <= Fraction(log2.lower()) and Fraction(log2.upper()) <= hi
        assert lo < hi
        assert payload["lo"].startswith("6.931471805599453094172321214581765680755")


class TestDecimalStrings:
    """Tests for exact directed decimal rendering."""

    def test_fixed(self):
        assert fixed_decimal(Fraction(2, 3), 3, upward=False) == "0.666"
        assert fixed_decimal(Fraction(2, 3), 3, upward=True) == "0.667"
        assert fixed_decimal(Fraction(-2, 3), 3, upward=False) == "-0.667"
        assert fixed_decimal(5, 2, upward=True) == "5.00"
        assert fixed_decimal(Fraction(7, 2), 0, upward=False) == "3"

    def test_scientific_directions(self):
        """Rounding is toward -inf or +inf, also for negative values."""
        assert scientific_decimal(Fraction(2, 3), 3, upward=False) == "6.666e-01"
        assert scientific_decimal(Fraction(2, 3), 3, upward=True) == "6.667e-01"
        assert scientific_decimal(Fraction(-2, 3), 3, upward=False) == "-6.667e-01"
        assert scientific_decimal(Fraction(-2, 3), 3, upward=True) == "-6.666e-01"

    def test_scientific_carry(self):
        """Rounding 9.9999... up moves to the next power of ten."""
        assert scientific_decimal(Fraction(99999, 10000), 2, upward=True) == "1.00e+01"
        assert scientific_decimal(Fraction(99999, 10000), 2, upward=False) == "9.99e+00"

    def test_scientific_exact_powers(self):
        assert scientific_decimal(10**40, 2, upward=False) == "1.00e+40"
        assert scientific_decimal(Fraction(1, 1000), 1, upward=True) == "1.0e-03"
        assert scientific_decimal(0, 2, upward=True) == "0.00e+00"

    def test_mpfr_input(self):
        """mpfr endpoints are rendered from their exact binary value."""
        text = scientific_decimal(gmpy2.mpfr(1), 40, upward=False)
        assert text == "1." + "0" * 40 + "e+00"
