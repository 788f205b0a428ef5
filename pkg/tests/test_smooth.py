"""Tests for smooth parts, largest prime factors, the sweep and the P(L_n) spot checks."""

import pytest

from src.config.loader import FactoringSettings
from src.errors import DomainError, ResourceError
from src.smooth import (
    Checkpoint,
    family_records,
    is_smooth,
    largest_prime_factor,
    scan_k,
    search,
    smooth_part,
    verify_t11,
)

SPORADIC = [
    (2, 3, 4), (2, 4, 7), (2, 6, 18),
    (3, 4, 10), (3, 6, 35), (3, 7, 64), (3, 12, 1350), (3, 15, 8400),
    (4, 8, 160),
    (10, 15, 24500),
]


class TestSmoothPart:
    """Tests for the 2, 3, 5, 7 split."""

    def test_full_factorization(self):
        f = smooth_part(8400)
        assert (f.a, f.b, f.c, f.d, f.remainder) == (4, 1, 2, 1, 1)
        assert f.is_smooth
        assert f.value() == 8400

    def test_missing_prime(self):
        f = smooth_part(24500)
        assert (f.a, f.b, f.c, f.d, f.remainder) == (2, 0, 3, 2, 1)
        assert f.describe() == "2^2 * 5^3 * 7^2"

    def test_remainder(self):
        f = smooth_part(11)
        assert f.remainder == 11
        assert not f.is_smooth
        assert not is_smooth(2 * 11)

    def test_one(self):
        assert smooth_part(1).is_smooth
        assert smooth_part(1).describe() == "1"

    def test_domain(self):
        with pytest.raises(DomainError):
            smooth_part(0)


class TestLargestPrimeFactor:
    """Tests for P(N) under the factoring budget."""

    @pytest.mark.parametrize("n, p", [(1350, 5), (1, 1), (0, 1), (-1, 1), (35, 7), (-35, 7), (97, 97)])
    def test_small(self, n, p):
        assert largest_prime_factor(n) == p

    def test_rho_split(self):
        """Both factors lie above the trial limit."""
        assert largest_prime_factor(10007 * 10009, trial_limit=100) == 10009

    def test_semiprime_above_default_trial_limit(self):
        assert largest_prime_factor(1000003 * 1000033) == 1000033

    def test_size_cap(self):
        with pytest.raises(ResourceError):
            largest_prime_factor(1000, max_bits=8)


class TestSearch:
    """Tests for the 7-smooth sweep."""

    def test_fibonacci_like_order(self):
        records = search(2, 2, 6, workers=1)
        assert [(r.k, r.n, r.value) for r in records] == [(2, 3, 4), (2, 4, 7), (2, 6, 18)]

    def test_empty_range(self):
        """L_6^(5) = 46 = 2 * 23."""
        assert search(5, 5, 6, workers=1) == []

    def test_tribonacci_like_order(self):
        records = search(3, 3, 20, workers=1)
        assert [r.n for r in records] == [4, 6, 7, 12, 15]
        assert records[-1].factorization.describe() == "2^4 * 3 * 5^2 * 7"

    def test_known_records(self):
        records = search(2, 10, 60, workers=1)
        assert [r.key for r in records] == SPORADIC
        assert all(r.family == "sporadic" for r in records)

    def test_bound_per_k(self):
        """A callable bound stops k = 3 before n = 12."""
        records = search(2, 3, lambda k: 10 if k == 3 else 6, workers=1)
        assert [r.key for r in records] == [(2, 3, 4), (2, 4, 7), (2, 6, 18), (3, 4, 10), (3, 6, 35), (3, 7, 64)]

    def test_scan_below_start(self):
        assert scan_k(5, 5) == []

    def test_invalid_range(self):
        with pytest.raises(DomainError):
            search(1, 3, 10)
        with pytest.raises(DomainError):
            search(4, 3, 10)


class TestCheckpoint:
    """Tests for resumable sweeps."""

    def test_records_shards(self, tmp_path):
        path = tmp_path / "search.checkpoint"
        search(3, 4, 20, workers=1, checkpoint=path)
        done, hits = Checkpoint(path).load()
        assert done == {3: 20, 4: 20}
        assert hits == {3: [4, 6, 7, 12, 15], 4: [8]}

    def test_resume_reuses_finished_shards(self, tmp_path):
        path = tmp_path / "search.checkpoint"
        first = search(3, 4, 20, workers=1, checkpoint=path)
        lines_before = path.read_text().splitlines()
        second = search(3, 4, 20, workers=1, checkpoint=path)
        assert [r.key for r in second] == [r.key for r in first]
        assert path.read_text().splitlines() == lines_before

    def test_larger_bound_reruns_shard(self, tmp_path):
        path = tmp_path / "search.checkpoint"
        search(3, 3, 10, workers=1, checkpoint=path)
        records = search(3, 3, 20, workers=1, checkpoint=path)
        assert [r.n for r in records] == [4, 6, 7, 12, 15]

    def test_torn_line_is_ignored(self, tmp_path):
        path = tmp_path / "search.checkpoint"
        path.write_text("3 4 hit\n3 20 done\n4 1")
        done, hits = Checkpoint(path).load()
        assert done == {3: 20}
        assert hits == {3: [4]}

    def test_missing_file(self, tmp_path):
        assert Checkpoint(tmp_path / "absent").load() == ({}, {})


class TestFamily:
    """Tests for the closed-form family."""

    def test_values(self):
        records = family_records(2, 4)
        assert [(r.k, r.n) for r in records] == [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)]
        assert all(r.value == 3 * 2 ** (r.n - 2) for r in records)
        assert all(r.family == "closed-form" for r in records)


class TestT11:
    """Tests for the P(L_n^(k)) spot checks."""

    def test_small_range_passes(self):
        report = verify_t11(2, 6, 30)
        assert report.passed
        assert report.failures == []
        assert report.checked == sum(30 - k for k in range(2, 7))

    def test_budget_skips_are_not_failures(self):
        """With a 16-bit cap every large term is skipped."""
        report = verify_t11(3, 3, 40, FactoringSettings(max_bits=16))
        assert report.passed
        assert report.skipped
        assert report.checked + len(report.skipped) == 40 - 3

    def test_domain(self):
        with pytest.raises(DomainError):
            verify_t11(1, 3, 10)
