"""Certificate stamping and provenance.

Every certificate carries the tool version and a sha256 digest over the
canonical JSON of its kind, inputs and outputs, so a rerun with identical
inputs produces an identical digest.
"""

import hashlib
import json
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from gmpy2 import mpfr, mpq, mpz
from pydantic import BaseModel

from src import __version__
from src.analytic.interval import scientific_decimal
from src.models.schemas import Certificate

# Integers at or above this magnitude are written as decimal strings.
NATIVE_INT_LIMIT = 2**63


def to_jsonable(value: Any) -> Any:
    """Convert models, big integers, rationals and MPFR values to JSON-safe data."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, type(mpz(0)))):
        value = int(value)
        return value if abs(value) < NATIVE_INT_LIMIT else str(value)
    if isinstance(value, (Fraction, type(mpq(0)))):
        if value.denominator == 1:
            return to_jsonable(int(value.numerator))
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, type(mpfr(0))):
        return scientific_decimal(value, 40, upward=False)
    if isinstance(value, float):
        return value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_payload"):
        return to_jsonable(value.to_payload())
    raise TypeError(f"cannot serialize {type(value).__name__} into a certificate")


def canonical_json(kind: str, inputs: Dict[str, Any], outputs: Dict[str, Any]) -> str:
    return json.dumps(
        {"kind": kind, "inputs": inputs, "outputs": outputs},
        sort_keys=True,
        separators=(",", ":"),
    )


def compute_digest(kind: str, inputs: Dict[str, Any], outputs: Dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(kind, inputs, outputs).encode("utf-8")).hexdigest()


def stamp_certificate(kind: str, inputs: Dict[str, Any], outputs: Dict[str, Any]) -> Certificate:
    """
    Build a certificate with JSON-safe payloads and its digest.

    Args:
        kind: One of root, bound, reduction, sweep, verify
        inputs: Parameters of the computation
        outputs: Results of the computation

    Returns:
        Stamped Certificate
    """
    inputs, outputs = to_jsonable(inputs), to_jsonable(outputs)
    return Certificate(
        kind=kind,
        inputs=inputs,
        outputs=outputs,
        tool_version=__version__,
        digest=compute_digest(kind, inputs, outputs),
    )


def verify_digest(cert: Certificate) -> bool:
    """True when the stored digest matches the certificate's content."""
    return cert.digest == compute_digest(cert.kind, cert.inputs, cert.outputs)


def provenance_footer(cert: Certificate) -> str:
    """Markdown provenance table appended to tool responses."""
    return f"""

---
## COMPUTATION PROVENANCE

| Field | Value |
|-------|-------|
| Kind | {cert.kind} |
| Tool Version | {cert.tool_version} |
| Computed | {cert.timestamp.isoformat()} |
| Digest (sha256) | `{cert.digest[:16]}...` |

*All values are exact integers or outward-rounded enclosures.*
"""


def computation_unavailable(operation: str, error_message: str) -> str:
    """
    Response for a computation that was refused or could not be certified.

    No partial or estimated values are returned in this case.

    Args:
        operation: Name of the attempted computation
        error_message: Error description

    Returns:
        Formatted error message
    """
    timestamp = datetime.now(timezone.utc).isoformat()
    return f"""
## RESULT UNAVAILABLE - COMPUTATION NOT CERTIFIED

| Field | Value |
|-------|-------|
| Operation | {operation} |
| Error Time | {timestamp} |
| Issue | {error_message or "Unknown error"} |

Adjust the inputs (range, precision cap or budget) and try again.
"""
