"""Lower bounds for lattice distances and the de Weger reduction step."""

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

from gmpy2 import mpq

from src.analytic.interval import RealInterval, float_up, to_mpq
from src.errors import DomainError, InsufficientPrecision, PreconditionError
from src.lattice.basis import ReducedBasis
from src.utils.escalation import DEFAULT_MAX_BITS, EscalationPolicy, escalate

logger = logging.getLogger(__name__)

SigmaCase = Literal["in-lattice", "out-of-lattice"]


def _solve(columns: Sequence[Sequence[int]], y: Sequence[mpq]) -> List[mpq]:
    """Exact solution z of B z = y where B has the given columns."""
    n = len(columns)
    rows = [[mpq(columns[j][i]) for j in range(n)] + [y[i]] for i in range(n)]
    for c in range(n):
        pivot = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                factor = rows[r][c]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[c])]
    return [rows[i][n] for i in range(n)]


def c1_lower_bound(
    reduced: ReducedBasis, y: Optional[Sequence] = None
) -> Tuple[mpq, SigmaCase]:
    """
    Exact lower bound c1^2 for the squared distance from y to the lattice.

    c2 = max_j ||b_1||^2 / ||b*_j||^2. When y is a lattice point sigma = 1;
    otherwise sigma is the distance to the nearest integer of the last
    non-integral coordinate of y in the reduced basis. Returns
    c1^2 = sigma^2 ||b_1||^2 / c2.

    Raises:
        DomainError: If y has the wrong dimension
    """
    dim = reduced.basis.dim
    if y is None:
        y = [0] * dim
    if len(y) != dim:
        raise DomainError(f"y has dimension {len(y)}, lattice has dimension {dim}")

    b1 = mpq(reduced.b1_norm_sq)
    c2 = max(b1 / norm for norm in reduced.gs.norms_sq)
    y_q = [to_mpq(v) for v in y]
    z = _solve(reduced.basis.columns, y_q)
    fractional = [i for i, zi in enumerate(z) if zi.denominator != 1]
    if not fractional:
        return b1 / c2, "in-lattice"
    i0 = fractional[-1]
    z_i0 = z[i0]
    frac = z_i0 - (z_i0.numerator // z_i0.denominator)
    sigma = min(frac, 1 - frac)
    return sigma**2 * b1 / c2, "out-of-lattice"


@dataclass(frozen=True)
class DeWegerOutcome:
    """Result of one de Weger step; H is None when the hypothesis fails."""

    hypothesis_ok: bool
    S: mpq
    T: mpq
    H: Optional[RealInterval]
    degenerate_branch: str

    @property
    def H_bound(self) -> Optional[float]:
        return None if self.H is None else float_up(self.H.hi)


def deweger_height(
    c1_sq,
    S,
    T,
    c3,
    c4: RealInterval,
    C: int,
    max_bits: int = DEFAULT_MAX_BITS,
    branch: str = "",
) -> DeWegerOutcome:
    """
    H = (log(C c3) - log(sqrt(c1^2 - S) - T)) / c4 from given S and T.

    Returns hypothesis_ok=False (and no H) when c1^2 <= T^2 + S.

    Raises:
        PreconditionError: If c3 or c4 is not positive
    """
    c1_sq, S, T, c3 = to_mpq(c1_sq), to_mpq(S), to_mpq(T), to_mpq(c3)
    if c3 <= 0:
        raise PreconditionError(f"c3 must be positive, got {c3}")
    if not c4.certainly_above(0):
        raise PreconditionError("c4 must be certified positive")

    # equality leaves log(sqrt(c1^2 - S) - T) undefined
    if not c1_sq > T * T + S:
        logger.debug("de Weger hypothesis fails: c1^2 <= T^2 + S")
        return DeWegerOutcome(False, S, T, None, branch)

    def attempt(bits: int) -> RealInterval:
        gap = (RealInterval.exact(c1_sq - S, bits).sqrt() - T)
        if not gap.certainly_above(0):
            raise InsufficientPrecision("sqrt(c1^2 - S) - T not certified positive")
        numerator = RealInterval.exact(C * c3, bits).log() - gap.log()
        return numerator / c4

    start = max(192, 2 * int(c1_sq.numerator).bit_length() + 64)
    policy = EscalationPolicy(initial_bits=start, max_bits=max(start, max_bits))
    H = escalate(attempt, policy, label="de Weger bound")
    return DeWegerOutcome(True, S, T, H, branch)


def deweger_bound(
    c1_sq,
    X: Sequence[int],
    c3,
    c4: RealInterval,
    C: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> DeWegerOutcome:
    """
    Upper bound for the last coordinate after lattice reduction.

    With S = sum of X_i^2 over the first dim - 1 coordinates and
    T = (1 + sum X_i) / 2, the bound
    H = (log(C c3) - log(sqrt(c1^2 - S) - T)) / c4 holds when c1^2 > T^2 + S.
    When it does not, the outcome has hypothesis_ok=False and the caller
    rescales C.

    Args:
        c1_sq: Exact lower bound for the squared lattice distance
        X: Bounds for the absolute values of all coordinates
        c3: Positive constant in |Lambda| < c3 exp(-c4 H)
        c4: Enclosure of the positive constant c4
        C: Scale used to build the lattice

    Raises:
        PreconditionError: If c3 or c4 is not positive or some X_i is negative
    """
    if any(x < 0 for x in X):
        raise PreconditionError("coordinate bounds must be non-negative")

    dim = len(X)
    S = mpq(sum(mpq(x) ** 2 for x in X[: dim - 1]))
    T = (1 + mpq(sum(X))) / 2
    branch = f"x_1 = ... = x_{dim - 1} = 0 is excluded separately"
    return deweger_height(c1_sq, S, T, c3, c4, C, max_bits=max_bits, branch=branch)
