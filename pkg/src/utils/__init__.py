"""Utility functions."""

from .aggregation import MarginAggregator
from .escalation import EscalationPolicy, ScaleRetry, escalate, retry_scaled
from .exporters import CSVExporter, JSONExporter, write_certificate, write_text
from .provenance import (
    computation_unavailable,
    provenance_footer,
    stamp_certificate,
    to_jsonable,
    verify_digest,
)

__all__ = [
    "CSVExporter",
    "EscalationPolicy",
    "JSONExporter",
    "MarginAggregator",
    "ScaleRetry",
    "computation_unavailable",
    "escalate",
    "provenance_footer",
    "retry_scaled",
    "stamp_certificate",
    "to_jsonable",
    "verify_digest",
    "write_certificate",
    "write_text",
]
