"""Tests for the verification suites on reduced ranges."""

from dataclasses import replace
from fractions import Fraction

import pytest
from gmpy2 import mpq

from src.errors import DomainError
from src.lattice import LatticeBasis, lll_reduce
from src.verify import SUITES, SuiteOptions, run_suite
from src.verify.suites import _closest_distance_sq, _coordinates, _lll_problems


class TestSuites:
    """Each suite passes on a small slice of its default range."""

    def test_identities(self):
        report = run_suite("identities", SuiteOptions(k_lo=2, k_hi=12))
        assert report.passed
        assert report.checked > 0

    def test_binet(self):
        report = run_suite("binet", SuiteOptions(k_lo=2, k_hi=4, n_max=60))
        assert report.passed
        assert report.checked == 3 * 60
        assert report.details["max_abs_residual_upper"] < 1.5

    def test_roots(self):
        report = run_suite("roots", SuiteOptions(k_lo=2, k_hi=40))
        assert report.passed
        assert report.checked == 39

    def test_fconst(self):
        assert run_suite("fconst", SuiteOptions(k_lo=2, k_hi=30)).passed

    def test_alpha_power(self):
        report = run_suite("alpha-power", SuiteOptions(k_lo=10, k_hi=16))
        assert report.passed
        assert report.checked > 0

    def test_t11(self):
        report = run_suite("t11", SuiteOptions(k_lo=2, k_hi=4, n_max=30))
        assert report.passed
        assert report.details["skipped"] == []

    def test_lll(self):
        report = run_suite("lll", SuiteOptions(cases=12, seed=7))
        assert report.passed
        assert report.details["seed"] == 7

    def test_lll_is_reproducible(self):
        first = run_suite("lll", SuiteOptions(cases=5, seed=3))
        second = run_suite("lll", SuiteOptions(cases=5, seed=3))
        assert first == second

    def test_lll_default_cases(self):
        """The default run covers 200 random bases."""
        assert SuiteOptions().cases == 200
        report = run_suite("lll")
        assert report.passed
        assert report.checked > 190

    def test_guz(self):
        report = run_suite("guz")
        assert report.passed
        assert report.checked == 9

    def test_chains(self):
        report = run_suite("chains", SuiteOptions(s_lo=3, s_hi=5))
        assert report.passed


class TestRunSuite:
    """Tests for suite dispatch and options."""

    def test_registry(self):
        assert set(SUITES) == {
            "identities", "binet", "roots", "fconst", "alpha-power",
            "t11", "lll", "guz", "chains",
        }

    def test_unknown_suite(self):
        with pytest.raises(DomainError):
            run_suite("everything")

    def test_empty_range(self):
        with pytest.raises(DomainError):
            run_suite("roots", SuiteOptions(k_lo=10, k_hi=5))

    def test_options_reject_small_k(self):
        with pytest.raises(ValueError):
            SuiteOptions(k_lo=1)


class TestLLLOracles:
    """Tests for the helpers behind the lll suite."""

    def test_coordinates(self):
        """Columns (2, 0) and (1, 3): y = (5/2, 3) is 1 * (1, 3) + 3/4 * (2, 0)."""
        assert _coordinates([[2, 0], [1, 3]], [Fraction(5, 2), 3]) == [mpq(3, 4), 1]

    def test_closest_distance(self):
        """Nearest point of Z^2 to (1/3, 5/2) is at squared distance 1/9 + 1/4."""
        identity = [[1, 0], [0, 1]]
        assert _closest_distance_sq(identity, [mpq(1, 3), mpq(5, 2)], 1) == mpq(13, 36)

    def test_clean_reduction_has_no_problems(self):
        basis = LatticeBasis.from_columns([[1, 0, 31415], [0, 1, 92653], [0, 0, 100000]])
        assert _lll_problems(basis, lll_reduce(basis)) == []

    def test_wrong_transform_is_reported(self):
        basis = LatticeBasis.from_columns([[1, 0, 31415], [0, 1, 92653], [0, 0, 100000]])
        doubled = LatticeBasis.from_columns([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
        reduced = replace(lll_reduce(basis), transform=doubled)
        problems = _lll_problems(basis, reduced)
        assert "transform is not unimodular" in problems
        assert any("not the basis times the transform" in p for p in problems)
