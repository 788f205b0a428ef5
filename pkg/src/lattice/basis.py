"""Exact lattice bases, Gram-Schmidt data and integral LLL reduction.

Bases are stored as columns of integers. LLL runs entirely in integer
arithmetic (the Gram determinants d_i and the scaled coefficients
lambda_ij = d_j * mu_ij stay integral), and every result is rechecked
against the reducedness conditions in exact rational arithmetic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from gmpy2 import mpq, mpz

from src.errors import CheckFailure, DomainError, RankError

logger = logging.getLogger(__name__)

DEFAULT_Y = Fraction(3, 4)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class LatticeBasis:
    """Square integer matrix given by its columns."""

    columns: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.columns)
        if n == 0:
            raise DomainError("a lattice basis needs at least one column")
        if any(len(col) != n for col in self.columns):
            raise DomainError("a lattice basis must be square")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "LatticeBasis":
        return cls(tuple(tuple(int(x) for x in col) for col in columns))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatticeBasis":
        return cls.from_columns(list(zip(*rows)))

    @classmethod
    def identity(cls, dim: int) -> "LatticeBasis":
        return cls.from_columns([[int(i == j) for i in range(dim)] for j in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.columns)

    def rows(self) -> List[List[int]]:
        return [list(row) for row in zip(*self.columns)]

    def determinant(self) -> int:
        return bareiss_determinant(self.rows())

    def to_payload(self) -> dict:
        return {"dim": self.dim, "columns": [[str(x) for x in col] for col in self.columns]}


@dataclass(frozen=True)
class GramSchmidtData:
    """Exact Gram-Schmidt orthogonalization of a basis."""

    b_star: List[List[mpq]]
    mu: List[List[mpq]]
    norms_sq: List[mpq]


@dataclass(frozen=True)
class ReducedBasis:
    """LLL-reduced basis with its Gram-Schmidt data and unimodular transform.

    `transform` holds integer columns t_j with reduced column j equal to the
    original basis applied to t_j.
    """

    basis: LatticeBasis
    gs: GramSchmidtData
    transform: LatticeBasis
    y_param: Fraction = DEFAULT_Y

    @property
    def b1_norm_sq(self) -> int:
        first = self.basis.columns[0]
        return _dot(first, first)


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = [[mpz(x) for x in row] for row in rows]
    n = len(m)
    sign, prev = 1, mpz(1)
    for i in range(n - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * int(m[n - 1][n - 1])


def gram_schmidt(basis: LatticeBasis) -> GramSchmidtData:
    """
    Exact Gram-Schmidt data of the columns of a basis.

    Raises:
        RankError: If the columns are linearly dependent
    """
    n = basis.dim
    cols = [[mpq(x) for x in col] for col in basis.columns]
    b_star: List[List[mpq]] = []
    norms: List[mpq] = []
    mu = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        v = list(cols[i])
        for j in range(i):
            mu[i][j] = _dot(cols[i], b_star[j]) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, b_star[j])]
        norm = _dot(v, v)
        if norm == 0:
            raise RankError(f"column {i} is a combination of the previous columns")
        mu[i][i] = mpq(1)
        b_star.append(v)
        norms.append(norm)
    return GramSchmidtData(b_star=b_star, mu=mu, norms_sq=norms)


def reducedness_failures(gs: GramSchmidtData, y_param: Fraction = DEFAULT_Y) -> List[str]:
    """Violations of size reduction and the Lovasz condition, empty if reduced."""
    y = mpq(y_param.numerator, y_param.denominator)
    failures = []
    n = len(gs.norms_sq)
    for i in range(1, n):
        for j in range(i):
            if 2 * abs(gs.mu[i][j]) > 1:
                failures.append(f"|mu[{i}][{j}]| = {abs(gs.mu[i][j])} exceeds 1/2")
        if gs.norms_sq[i] < (y - gs.mu[i][i - 1] ** 2) * gs.norms_sq[i - 1]:
            failures.append(f"Lovasz condition fails at index {i}")
    return failures


def lll_reduce(basis: LatticeBasis, y_param: Fraction = DEFAULT_Y) -> ReducedBasis:
    """
    LLL-reduce a basis in exact integer arithmetic.

    Swaps are taken at the smallest violating index, so the output is
    deterministic for a given input.

    Args:
        basis: Basis with linearly independent columns
        y_param: Lovasz parameter, strictly between 1/4 and 1

    Returns:
        ReducedBasis whose conditions have been rechecked exactly

    Raises:
        DomainError: If y_param is out of range
        RankError: If the columns are linearly dependent
        CheckFailure: If the exact post-check rejects the output
    """
    y_param = Fraction(y_param)
    if not Fraction(1, 4) < y_param < 1:
        raise DomainError(f"y_param must lie in (1/4, 1), got {y_param}")
    p, q = y_param.numerator, y_param.denominator

    n = basis.dim
    b = [[mpz(x) for x in col] for col in basis.columns]
    h = [[mpz(int(i == j)) for i in range(n)] for j in range(n)]
    d = [mpz(0)] * (n + 1)
    lam = [[mpz(0)] * n for _ in range(n)]

    d[0] = mpz(1)
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise RankError("column 0 is zero")

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) <= d[l + 1]:
            return
        r = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
        b[k] = [x - r * y for x, y in zip(b[k], b[l])]
        h[k] = [x - r * y for x, y in zip(h[k], h[l])]
        lam[k][l] -= r * d[l + 1]
        for i in range(l):
            lam[k][i] -= r * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        h[k], h[k - 1] = h[k - 1], h[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        new_d = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (new_d * t + lk * lam[i][k]) // d[k + 1]
        d[k] = new_d

    k, kmax, swaps = 1, 0, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise RankError(f"column {k} is a combination of the previous columns")
                    d[k + 1] = u
        red(k, k - 1)
        if q * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < p * d[k] ** 2:
            swap(k, kmax)
            swaps += 1
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1

    logger.debug("LLL dim=%d finished after %d swaps", n, swaps)

    reduced = LatticeBasis.from_columns(b)
    transform = LatticeBasis.from_columns(h)
    gs = gram_schmidt(reduced)
    failures = reducedness_failures(gs, y_param)
    if failures:
        raise CheckFailure("LLL post-check failed: " + "; ".join(failures))
    if abs(transform.determinant()) != 1:
        raise CheckFailure("LLL transform is not unimodular")
    return ReducedBasis(basis=reduced, gs=gs, transform=transform, y_param=y_param)
