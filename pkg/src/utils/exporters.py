"""Export formatters for certificates, solution records and per-k bounds."""

import csv
from io import StringIO
from pathlib import Path
from typing import List, Optional

from src.models.schemas import Certificate, ReductionCertificate, SolutionRecord


class CSVExporter:
    """Export search and reduction results to CSV format."""

    @staticmethod
    def export_records(records: List[SolutionRecord]) -> str:
        """
        Export solution records to CSV format.

        Args:
            records: Records from the smooth-term search

        Returns:
            CSV-formatted string with one row per record
        """
        output = StringIO()
        writer = csv.writer(output)

        writer.writerow(["k", "n", "value", "a", "b", "c", "d", "family"])

        for record in records:
            f = record.factorization
            writer.writerow([record.k, record.n, str(record.value), f.a, f.b, f.c, f.d, record.family])

        return output.getvalue()

    @staticmethod
    def export_bounds(certificates: List[ReductionCertificate]) -> str:
        """
        Export per-k (or per-round) reduction bounds to CSV.

        Args:
            certificates: Reduction certificates

        Returns:
            CSV-formatted string with the scale exponent and H bound of each
        """
        output = StringIO()
        writer = csv.writer(output)

        writer.writerow(["case", "k", "round", "dim", "C_digits", "attempts", "bound_on", "H_bound"])

        for cert in certificates:
            writer.writerow(
                [
                    cert.case,
                    cert.k if cert.k is not None else "",
                    cert.round if cert.round is not None else "",
                    cert.dim,
                    len(str(cert.C)) - 1,
                    cert.attempts,
                    cert.bound_on,
                    cert.H_bound,
                ]
            )

        return output.getvalue()


class JSONExporter:
    """Export certificates to JSON format."""

    @staticmethod
    def export_certificate(cert: Certificate) -> str:
        """
        Export a certificate as an indented JSON document.

        Args:
            cert: Stamped certificate

        Returns:
            JSON-formatted string
        """
        return cert.model_dump_json(indent=2)

    @staticmethod
    def load_certificate(text: str) -> Certificate:
        return Certificate.model_validate_json(text)


def write_text(path: Path, text: str) -> Path:
    """Write text to path, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def write_certificate(cert: Certificate, output_dir: Path, name: Optional[str] = None) -> Path:
    """Write a certificate as <output_dir>/<name or kind>.json."""
    return write_text(Path(output_dir) / f"{name or cert.kind}.json", JSONExporter.export_certificate(cert))
