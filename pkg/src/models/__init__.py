"""Data models for klucas."""

from src.models.schemas import (
    BoundReport,
    Certificate,
    IdentityReport,
    IteratedReduction,
    MatveevInstance,
    ReductionCertificate,
    SmoothFactorization,
    SolutionRecord,
    SuiteReport,
    T11Report,
)

__all__ = [
    "BoundReport",
    "Certificate",
    "IdentityReport",
    "IteratedReduction",
    "MatveevInstance",
    "ReductionCertificate",
    "SmoothFactorization",
    "SolutionRecord",
    "SuiteReport",
    "T11Report",
]
