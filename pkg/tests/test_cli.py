"""Tests for the klucas command line."""

import argparse
import json

import pytest

from src.cli import main, parse_range


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    """No configuration file or KLUCAS_* variable leaks into the commands."""
    for name in ("KLUCAS_CONFIG", "KLUCAS_WORKERS", "KLUCAS_LOG_LEVEL", "KLUCAS_OUTPUT_DIR"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestParseRange:
    """Tests for A..B arguments."""

    def test_range(self):
        assert parse_range("2..1000") == (2, 1000)

    def test_single_value(self):
        assert parse_range("7") == (7, 7)

    @pytest.mark.parametrize("text", ["5..3", "a..b", "3..", ""])
    def test_invalid(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)


class TestSeq:
    """Tests for `klucas seq`."""

    def test_range(self, capsys):
        assert main(["seq", "--k", "2", "--range", "0..4"]) == 0
        assert capsys.readouterr().out.strip() == "2 1 3 4 7"

    def test_single_term(self, capsys):
        assert main(["seq", "--k", "3", "--n", "7"]) == 0
        assert capsys.readouterr().out.strip() == "64"

    def test_leading_zero(self, capsys):
        """n = 2 - k is the first of the leading zeros."""
        assert main(["seq", "--k", "3", "--n", "-1"]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_index_below_domain(self, capsys):
        """n = 1 - k is outside the sequence: exit 2, nothing on stdout."""
        assert main(["seq", "--k", "3", "--n", "-2"]) == 2
        captured = capsys.readouterr()
        assert "klucas seq:" in captured.err
        assert captured.out == ""

    def test_missing_argument(self):
        assert main(["seq", "--n", "3"]) == 2


class TestRoot:
    """Tests for `klucas root`."""

    def test_golden_ratio(self, capsys):
        assert main(["root", "--k", "2", "--digits", "30"]) == 0
        assert capsys.readouterr().out.strip() == "1.618033988749894848204586834365"

    def test_order_one(self):
        assert main(["root", "--k", "1"]) == 2

    def test_json_certificate(self, capsys):
        assert main(["root", "--k", "3", "--digits", "10", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "root"
        assert data["inputs"]["k"] == 3
        assert data["outputs"]["digits"] == "1.8392867552"
        assert data["outputs"]["check"] is True
        assert len(data["digest"]) == 64


class TestSearch:
    """Tests for `klucas search`."""

    def test_order_three(self, capsys, isolated):
        code = main(["search", "--k", "3..3", "--n-max", "20", "--workers", "1", "--out", str(isolated)])
        assert code == 0
        out = capsys.readouterr().out
        assert "k=3 n=15 L=8400 = 2^4 * 3 * 5^2 * 7" in out
        assert "5 records for k in [3,3], n <= 20" in out
        assert (isolated / "search.json").exists()
        assert (isolated / "search.csv").read_text().count("\n") == 6

    def test_resume_uses_checkpoint(self, capsys, isolated):
        args = ["search", "--k", "2..4", "--n-max", "20", "--workers", "1", "--resume", "--out", str(isolated)]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert (isolated / "search.checkpoint").exists()
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_families(self, capsys, isolated):
        assert main(["search", "--k", "2..4", "--n-max", "10", "--workers", "1",
                     "--families", "--out", str(isolated)]) == 0
        assert "6 closed-form terms" in capsys.readouterr().out

    def test_order_below_two(self, isolated):
        assert main(["search", "--k", "1..3", "--out", str(isolated)]) == 2


class TestReduce:
    """Tests for `klucas reduce`."""

    def test_large_k_rejects_k(self, isolated):
        assert main(["reduce", "--case", "large-k", "--k", "5", "--out", str(isolated)]) == 2

    def test_single_k(self, capsys, isolated):
        assert main(["reduce", "--case", "small-k", "--k", "2", "--out", str(isolated)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("k = 2: n <= ")
        assert (isolated / "reduce-small-k-2.json").exists()

    def test_scale_too_small(self, capsys, isolated):
        code = main(["reduce", "--case", "small-k", "--k", "3", "--c-exponent", "2",
                     "--max-retries", "0", "--out", str(isolated)])
        assert code == 3
        assert "klucas reduce:" in capsys.readouterr().err


class TestVerify:
    """Tests for `klucas verify`."""

    def test_identities(self, capsys):
        assert main(["verify", "identities", "--k-max", "50"]) == 0
        assert capsys.readouterr().out.startswith("identities: pass")

    def test_chains_for_seven_smooth(self, capsys):
        assert main(["verify", "chains", "--s", "4"]) == 0
        assert "chains: pass" in capsys.readouterr().out

    def test_unknown_suite(self):
        assert main(["verify", "everything"]) == 2

    def test_empty_k_range(self):
        assert main(["verify", "binet", "--k", "5", "--k-max", "4"]) == 2


class TestConfiguration:
    """Tests for --config and flag precedence."""

    def test_config_file(self, capsys, isolated):
        path = isolated / "small.yaml"
        path.write_text(f"search:\n  k_min: 2\n  k_max: 2\n  n_max: 6\noutput_dir: {isolated}\n")
        assert main(["search", "--config", str(path), "--workers", "1"]) == 0
        out = capsys.readouterr().out
        assert "3 records for k in [2,2], n <= 6" in out

    def test_invalid_flag_value(self):
        assert main(["seq", "--k", "2", "--n", "3", "--workers", "0"]) == 2
