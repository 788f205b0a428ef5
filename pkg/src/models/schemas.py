"""Pydantic models for reports, records and certificates."""

from datetime import datetime, timezone
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    model_validator,
)


def _parse_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    # gmpy2 mpq and friends expose numerator/denominator
    return Fraction(int(value.numerator), int(value.denominator))


def _fraction_to_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# Integers that may exceed 2^63 travel as decimal strings in JSON.
BigInt = Annotated[
    int,
    BeforeValidator(int),
    PlainSerializer(str, return_type=str, when_used="json"),
]

ExactRational = Annotated[
    Fraction,
    PlainValidator(_parse_fraction),
    PlainSerializer(_fraction_to_str, return_type=str, when_used="json"),
]


class IdentityReport(BaseModel):
    """Result of checking the closed-form identities for one k."""

    k: int
    n_hi: int
    passed: bool
    checked: int
    counterexample_n: Optional[int] = None
    counterexample: Optional[str] = None


class SmoothFactorization(BaseModel):
    """N = 2^a * 3^b * 5^c * 7^d * remainder with gcd(remainder, 210) = 1."""

    model_config = ConfigDict(frozen=True)

    a: int = Field(ge=0)
    b: int = Field(ge=0)
    c: int = Field(ge=0)
    d: int = Field(ge=0)
    remainder: BigInt

    @property
    def is_smooth(self) -> bool:
        return self.remainder == 1

    def value(self) -> int:
        return 2**self.a * 3**self.b * 5**self.c * 7**self.d * self.remainder

    def describe(self) -> str:
        parts = [
            f"{p}^{e}" if e > 1 else str(p)
            for p, e in ((2, self.a), (3, self.b), (5, self.c), (7, self.d))
            if e
        ]
        if self.remainder != 1 or not parts:
            parts.append(str(self.remainder))
        return " * ".join(parts)


class SolutionRecord(BaseModel):
    """A 7-smooth term L_n^(k)."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=2)
    n: int
    value: BigInt
    factorization: SmoothFactorization
    family: Literal["sporadic", "closed-form"] = "sporadic"

    @model_validator(mode="after")
    def check_record(self):
        if not self.factorization.is_smooth:
            raise ValueError("solution records must be 7-smooth")
        if self.family == "sporadic" and self.n < self.k + 1:
            raise ValueError("sporadic records need n >= k + 1")
        return self

    @property
    def key(self) -> tuple:
        return (self.k, self.n, self.value)


class MatveevInstance(BaseModel):
    """Parameters of one application of Matveev's lower bound."""

    t: int = Field(ge=1)
    D: int = Field(ge=1)
    B: float = Field(ge=1)
    A: List[float]

    @model_validator(mode="after")
    def check_instance(self):
        if len(self.A) != self.t:
            raise ValueError(f"expected {self.t} A-values, got {len(self.A)}")
        if any(a < 0.16 for a in self.A):
            raise ValueError("every A_i must be at least 0.16")
        return self


class BoundReport(BaseModel):
    """One evaluated bound, optionally compared against a claimed inequality."""

    name: str
    inputs: Dict[str, Any] = {}
    value: float
    side: Literal["upper", "lower"] = "upper"
    claim: Optional[str] = None
    claimed_value: Optional[float] = None
    holds: Optional[bool] = None


class ReductionCertificate(BaseModel):
    """Inputs and outputs of one de Weger reduction step."""

    case: Literal["small-k", "large-k"]
    k: Optional[int] = None
    round: Optional[int] = None
    dim: int
    labels: List[str]
    C: BigInt
    precision_bits: int
    etas: List[Dict[str, Any]]
    eta_floors: List[BigInt]
    X: List[BigInt]
    X0: BigInt
    c1_sq: ExactRational
    S: ExactRational
    T: ExactRational
    c3: ExactRational
    c4_lower: str
    hypothesis_ok: bool
    H_bound: Optional[float] = None
    bound_on: str
    degenerate_branch: str
    attempts: int = 1


class IteratedReduction(BaseModel):
    """Chain of large-k reduction rounds."""

    start_k: float
    start_n: float
    rounds: List[ReductionCertificate]
    k_bounds: List[int]
    n_bounds: List[float]
    final_k_bound: int
    target: int
    closed: bool
    stop_reason: str


class T11Report(BaseModel):
    """Spot checks of P(L_n^(k)) against (1/86) log log n."""

    passed: bool
    checked: int
    failures: List[str] = []
    skipped: List[str] = []
    margins: Dict[str, Optional[float]] = {}


class SuiteReport(BaseModel):
    """Outcome of one verification suite."""

    suite: str
    passed: bool
    checked: int
    failures: List[str] = []
    details: Dict[str, Any] = {}


class Certificate(BaseModel):
    """Self-describing record of a computation, with inputs and outputs."""

    kind: Literal["root", "bound", "reduction", "sweep", "verify"]
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    tool_version: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    digest: str = ""
