"""Tests for certificates, exporters, statistics and retry policies."""

import csv
from fractions import Fraction
from io import StringIO

import pytest
from gmpy2 import mpfr, mpq, mpz

from src import __version__
from src.errors import InsufficientPrecision, ResourceError
from src.smooth import search
from src.utils import (
    CSVExporter,
    EscalationPolicy,
    JSONExporter,
    MarginAggregator,
    ScaleRetry,
    computation_unavailable,
    escalate,
    provenance_footer,
    retry_scaled,
    stamp_certificate,
    to_jsonable,
    verify_digest,
    write_certificate,
)


@pytest.fixture
def k3_records():
    return search(3, 3, 20, workers=1)


class TestToJsonable:
    """Tests for certificate payload conversion."""

    def test_small_ints_stay_native(self):
        assert to_jsonable(2**62) == 2**62
        assert to_jsonable(mpz(7)) == 7

    def test_big_ints_become_strings(self):
        assert to_jsonable(2**63) == str(2**63)
        assert to_jsonable(-(10**40)) == "-" + "1" + "0" * 40

    def test_rationals(self):
        assert to_jsonable(Fraction(3, 4)) == "3/4"
        assert to_jsonable(mpq(10, 5)) == 2

    def test_mpfr(self):
        """MPFR values become decimal strings in scientific form."""
        assert to_jsonable(mpfr(1)) == "1." + "0" * 40 + "e+00"
        text = to_jsonable(mpfr("297.84"))
        assert text.startswith("2.9784")
        assert text.endswith("e+02")
        assert abs(Fraction(text) - Fraction(29784, 100)) < Fraction(1, 10**10)

    def test_root_certificate_alpha_parses(self):
        """The stamped alpha enclosure is made of parseable decimals."""
        from src.analytic import dominant_root

        cert = stamp_certificate("root", {"k": 3}, {"root": dominant_root(3, 96)})
        alpha = cert.outputs["root"]["alpha"]
        lo, hi = Fraction(alpha["lo"]), Fraction(alpha["hi"])
        assert Fraction(18392867552, 10**10) < lo < hi < Fraction(18392867553, 10**10)

    def test_nested(self):
        payload = to_jsonable({"k": 3, "values": (mpz(1), None, True)})
        assert payload == {"k": 3, "values": [1, None, True]}

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            to_jsonable(object())


class TestCertificates:
    """Tests for stamping and digests."""

    def test_digest_is_reproducible(self):
        first = stamp_certificate("root", {"k": 2}, {"digits": "1.618"})
        second = stamp_certificate("root", {"k": 2}, {"digits": "1.618"})
        assert first.digest == second.digest
        assert len(first.digest) == 64
        assert first.tool_version == __version__

    def test_digest_depends_on_content(self):
        first = stamp_certificate("root", {"k": 2}, {"digits": "1.618"})
        second = stamp_certificate("root", {"k": 3}, {"digits": "1.618"})
        assert first.digest != second.digest

    def test_verify_digest(self):
        cert = stamp_certificate("sweep", {"k": 3}, {"count": 5})
        assert verify_digest(cert)
        tampered = cert.model_copy(update={"outputs": {"count": 6}})
        assert not verify_digest(tampered)

    def test_json_round_trip_keeps_digest(self, tmp_path):
        cert = stamp_certificate("bound", {"k": 10, "s": 4}, {"log_n": mpfr("297.84")})
        path = write_certificate(cert, tmp_path / "out", "bound-10")
        assert path.name == "bound-10.json"
        loaded = JSONExporter.load_certificate(path.read_text(encoding="utf-8"))
        assert loaded.digest == cert.digest
        assert verify_digest(loaded)

    def test_footer(self):
        cert = stamp_certificate("verify", {}, {"passed": True})
        footer = provenance_footer(cert)
        assert "COMPUTATION PROVENANCE" in footer
        assert cert.digest[:16] in footer

    def test_unavailable_message(self):
        text = computation_unavailable("root(k=1)", "k must be at least 2")
        assert "RESULT UNAVAILABLE" in text
        assert "k must be at least 2" in text


class TestExporters:
    """Tests for CSV and JSON exports."""

    def test_records_csv(self, k3_records):
        rows = list(csv.reader(StringIO(CSVExporter.export_records(k3_records))))
        assert rows[0] == ["k", "n", "value", "a", "b", "c", "d", "family"]
        assert rows[-1] == ["3", "15", "8400", "4", "1", "2", "1", "sporadic"]
        assert len(rows) == 6



class TestAggregation:
    """Tests for MarginAggregator."""

    def test_statistics(self):
        stats = MarginAggregator.calculate_statistics([4, 1, 3, 2])
        assert stats["count"] == 4
        assert stats["min"] == 1
        assert stats["max"] == 4
        assert stats["mean"] == 2.5
        assert stats["q1"] is not None

    def test_single_value(self):
        stats = MarginAggregator.calculate_statistics([5])
        assert stats["std_dev"] == 0.0
        assert stats["q1"] is None

    def test_empty(self):
        assert MarginAggregator.calculate_statistics([])["count"] == 0

    def test_argmax(self):
        assert MarginAggregator.argmax([(2, 10.0), (3, 12.5), (4, 12.5), (5, None)]) == (3, 12.5)
        assert MarginAggregator.argmax([]) is None

    def test_histogram(self):
        assert MarginAggregator.histogram([1, 5, 12, 19, 20], 10) == [(0, 2), (10, 2), (20, 1)]


class TestEscalation:
    """Tests for precision doubling and scale retries."""

    def test_escalates_until_success(self):
        seen = []

        def attempt(bits):
            seen.append(bits)
            if bits < 256:
                raise InsufficientPrecision("too wide")
            return bits

        assert escalate(attempt, EscalationPolicy(initial_bits=64, max_bits=1024)) == 256
        assert seen == [64, 128, 256]

    def test_cap_raises_resource_error(self):
        def attempt(bits):
            raise InsufficientPrecision("too wide")

        with pytest.raises(ResourceError):
            escalate(attempt, EscalationPolicy(initial_bits=64, max_bits=256))

    def test_requested_bits_above_cap(self):
        with pytest.raises(ResourceError):
            escalate(lambda bits: bits, EscalationPolicy(initial_bits=64, max_bits=128), requested_bits=512)

    def test_other_errors_propagate(self):
        def attempt(bits):
            raise ValueError("not a precision problem")

        with pytest.raises(ValueError):
            escalate(attempt)

    def test_retry_scaled(self):
        result, attempts = retry_scaled(lambda c: c, 10, lambda c: c >= 10**5, ScaleRetry(factor=10))
        assert result == 10**5
        assert attempts == 5

    def test_retry_scaled_gives_up(self):
        result, attempts = retry_scaled(lambda c: c, 1, lambda c: False, ScaleRetry(factor=2, max_retries=3))
        assert result == 8
        assert attempts == 4
