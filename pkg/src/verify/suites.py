"""Verification suites for the analytic facts the pipelines rely on.

Each suite runs a family of exact or interval checks and returns a
SuiteReport; a suite passes only if every check in it passes.
"""

import logging
import math
import random
from itertools import product
from typing import Callable, Dict, List, Optional

import gmpy2
from gmpy2 import mpfr, mpq
from pydantic import BaseModel, Field

from src.analytic.constants import binet_residual, derived_constants
from src.analytic.interval import RealInterval, rounding
from src.analytic.roots import dominant_root, psi_sign
from src.bounds.chains import k_at_most_s_chain, large_n_chain, small_k_chain, small_n_chain
from src.bounds.formulas import BITS, guz_bound, lemma31_bound
from src.config.loader import FactoringSettings
from src.errors import DomainError, KlucasError
from src.lattice.basis import (
    LatticeBasis,
    ReducedBasis,
    bareiss_determinant,
    lll_reduce,
    reducedness_failures,
)
from src.lattice.deweger import c1_lower_bound
from src.models.schemas import SuiteReport
from src.sequence.identities import check_identities
from src.smooth.t11 import verify_t11

logger = logging.getLogger(__name__)


class SuiteOptions(BaseModel):
    """Ranges for the suites; None picks each suite's own default."""

    k_lo: Optional[int] = Field(default=None, ge=2)
    k_hi: Optional[int] = Field(default=None, ge=2)
    n_max: Optional[int] = Field(default=None, ge=1)
    s_lo: Optional[int] = Field(default=None, ge=2)
    s_hi: Optional[int] = Field(default=None, ge=2)
    cases: int = Field(default=200, ge=1)
    seed: int = 0
    factoring: FactoringSettings = FactoringSettings()

    def k_range(self, lo: int, hi: int) -> range:
        k_lo = self.k_lo if self.k_lo is not None else lo
        k_hi = self.k_hi if self.k_hi is not None else hi
        if k_lo > k_hi:
            raise DomainError(f"empty k range {k_lo}..{k_hi}")
        return range(k_lo, k_hi + 1)

    def s_range(self, lo: int, hi: int) -> range:
        s_lo = self.s_lo if self.s_lo is not None else lo
        s_hi = self.s_hi if self.s_hi is not None else hi
        if s_lo > s_hi:
            raise DomainError(f"empty s range {s_lo}..{s_hi}")
        return range(s_lo, s_hi + 1)


def _report(suite: str, checked: int, failures: List[str], **details) -> SuiteReport:
    return SuiteReport(
        suite=suite, passed=not failures, checked=checked, failures=failures, details=details
    )


def suite_identities(opts: SuiteOptions) -> SuiteReport:
    """L_n = 3*2^(n-2) for n <= k, the value at k + 1 and the growth bound."""
    checked, failures = 0, []
    for k in opts.k_range(2, 50):
        n_hi = max(opts.n_max or 2 * k + 10, k + 1)
        report = check_identities(k, n_hi)
        checked += report.checked
        if not report.passed:
            failures.append(f"k={k}: {report.counterexample}")
    return _report("identities", checked, failures)


def suite_binet(opts: SuiteOptions) -> SuiteReport:
    """|L_n - f_k(alpha)(2 alpha - 1) alpha^(n-1)| < 3/2 for 1 <= n <= n_max."""
    n_max = opts.n_max or 200
    bits = max(192, n_max + 64)
    checked, failures, worst = 0, [], mpq(0)
    for k in opts.k_range(2, 20):
        root = dominant_root(k, bits + k.bit_length() + 8)
        consts = derived_constants(root, bits)
        for n in range(1, n_max + 1):
            try:
                residual = binet_residual(root, consts, n)
            except KlucasError as e:
                failures.append(f"k={k}, n={n}: {e.message}")
                continue
            checked += 1
            worst = max(worst, mpq(residual.abs_upper()))
    return _report("binet", checked, failures, max_abs_residual_upper=float(worst))


def suite_roots(opts: SuiteOptions) -> SuiteReport:
    """Root enclosures sit inside (2(1 - 2^-k), 2) with Psi_k changing sign."""
    checked, failures = 0, []
    for k in opts.k_range(2, 1000):
        cert = dominant_root(k, 64)
        checked += 1
        if not cert.check():
            failures.append(f"k={k}: root certificate does not recheck")
        elif psi_sign(k, cert.alpha.lower()) >= 0:
            failures.append(f"k={k}: Psi_k not negative at the lower endpoint")
    return _report("roots", checked, failures)


def suite_fconst(opts: SuiteOptions) -> SuiteReport:
    """
    f_k(alpha) in (1/2, 3/4), 2 alpha - 1 in (3 - 4/2^k, 3), 1/log alpha < 2.1,
    |f_k(alpha) - 1/2| < 2k/2^k and |2 alpha - 1 - 3| < 4/2^k.
    """
    checked, failures = 0, []
    for k in opts.k_range(2, 200):
        consts = derived_constants(dominant_root(k, 128 + k), 64 + k)
        failures += consts.invariant_failures()
        if not (consts.f_alpha - mpq(1, 2)).abs_upper() < mpq(2 * k, 2**k):
            failures.append(f"k={k}: |f_k(alpha) - 1/2| not certified below 2k/2^k")
        if not (consts.two_alpha_minus_one - 3).abs_upper() < mpq(4, 2**k):
            failures.append(f"k={k}: |(2 alpha - 1) - 3| not certified below 4/2^k")
        checked += 5
    return _report("fconst", checked, failures)


def _alpha_power_samples(k: int) -> List[int]:
    top = math.isqrt(2**k)
    if k % 2 == 0:
        # n < 2^(k/2) excludes the power itself
        top -= 1
    samples = {k + 1, 2 * k, top // 2, top}
    return sorted(n for n in samples if 2 <= n <= top)


def suite_alpha_power(opts: SuiteOptions) -> SuiteReport:
    """|alpha^(n-1) - 2^(n-1)| < 2^n / 2^(k/2) for sampled n < 2^(k/2)."""
    checked, failures = 0, []
    for k in opts.k_range(10, 60):
        bits = 2 * k + 64
        consts = derived_constants(dominant_root(k, bits + 16), bits)
        half_alpha = consts.alpha / 2
        for n in _alpha_power_samples(k):
            # divide through by 2^(n-1): |(alpha/2)^(n-1) - 1| < 2 / 2^(k/2)
            lhs = mpq((half_alpha ** (n - 1) - 1).abs_upper())
            checked += 1
            if not lhs * lhs < mpq(4, 2**k):
                failures.append(f"k={k}, n={n}: |alpha^(n-1) - 2^(n-1)| not certified small")
    return _report("alpha-power", checked, failures)


def suite_t11(opts: SuiteOptions) -> SuiteReport:
    """P(L_n^(k)) > (1/86) log log n on the requested ranges."""
    ks = opts.k_range(2, 10)
    report = verify_t11(ks.start, ks.stop - 1, opts.n_max or 100, opts.factoring)
    return _report(
        "t11",
        report.checked,
        report.failures,
        skipped=report.skipped,
        margins=report.margins,
    )


def _coordinates(columns, y) -> List[mpq]:
    """Coordinates of y in the basis with the given columns, by Cramer's rule."""
    den = math.lcm(*(mpq(v).denominator for v in y))
    scaled = [int(mpq(v) * den) for v in y]
    det = bareiss_determinant(columns)
    coords = []
    for i in range(len(columns)):
        replaced = [scaled if j == i else col for j, col in enumerate(columns)]
        coords.append(mpq(bareiss_determinant(replaced), den * det))
    return coords


def _nearest_int(q: mpq) -> int:
    return int((2 * q.numerator + q.denominator) // (2 * q.denominator))


def _closest_distance_sq(columns, y, radius: int) -> mpq:
    """Smallest |Bx - y|^2 over x within radius of the rounded coordinates of y."""
    dim = len(columns)
    center = [_nearest_int(z) for z in _coordinates(columns, y)]
    best = None
    for offsets in product(range(-radius, radius + 1), repeat=dim):
        coeffs = [c + o for c, o in zip(center, offsets)]
        point = [sum(c * col[i] for c, col in zip(coeffs, columns)) for i in range(dim)]
        d = sum((p - mpq(yi)) ** 2 for p, yi in zip(point, y))
        if best is None or d < best:
            best = d
    return mpq(best)


def _shortest_sq(columns, radius: int) -> int:
    dim = len(columns)
    best = None
    for coeffs in product(range(-radius, radius + 1), repeat=dim):
        if not any(coeffs):
            continue
        point = [sum(c * col[i] for c, col in zip(coeffs, columns)) for i in range(dim)]
        d = sum(p * p for p in point)
        if best is None or d < best:
            best = d
    return best


def _lll_problems(basis: LatticeBasis, reduced: ReducedBasis) -> List[str]:
    """Reducedness, the transform identity, unimodularity and the approximation factor."""
    dim = basis.dim
    problems = reducedness_failures(reduced.gs, reduced.y_param)
    if abs(reduced.basis.determinant()) != abs(basis.determinant()):
        problems.append("determinant changed")
    if abs(reduced.transform.determinant()) != 1:
        problems.append("transform is not unimodular")
    for j, (col, t) in enumerate(zip(reduced.basis.columns, reduced.transform.columns)):
        rebuilt = [sum(basis.columns[i][row] * t[i] for i in range(dim)) for row in range(dim)]
        if list(col) != rebuilt:
            problems.append(f"reduced column {j} is not the basis times the transform")
    # enumeration only overestimates the shortest length
    if reduced.b1_norm_sq > 2 ** (dim - 1) * _shortest_sq(reduced.basis.columns, 2):
        problems.append("first vector exceeds the approximation factor")
    return problems


def suite_lll(opts: SuiteOptions) -> SuiteReport:
    """
    Random bases of dimension 2 to 4 with entries up to 10^3: reducedness,
    the transform identity and unimodularity, the 2^((dim-1)/2)
    approximation factor, and c1 for a target planted next to a known
    lattice point against the enumerated distance around it.
    """
    rng = random.Random(opts.seed)
    checked, failures = 0, []
    for case in range(opts.cases):
        dim = rng.randint(2, 4)
        columns = [[rng.randint(-1000, 1000) for _ in range(dim)] for _ in range(dim)]
        basis = LatticeBasis.from_columns(columns)
        if basis.determinant() == 0:
            continue
        reduced = lll_reduce(basis)
        checked += 1
        problems = _lll_problems(basis, reduced)

        # y = B v + e with e in {-1/3, 0, 1/3}^dim, e != 0, so y is off the lattice
        v = [rng.randint(-50, 50) for _ in range(dim)]
        e = [mpq(rng.choice((-1, 0, 1)), 3) for _ in range(dim)]
        if not any(e):
            e[rng.randrange(dim)] = mpq(1, 3)
        y = [sum(v[j] * columns[j][i] for j in range(dim)) + e[i] for i in range(dim)]
        c1_sq, sigma_case = c1_lower_bound(reduced, y)
        planted = sum(x * x for x in e)
        if sigma_case != "out-of-lattice":
            problems.append("planted target reported as a lattice point")
        if c1_sq > planted:
            problems.append("c1^2 exceeds the distance to the planted lattice point")
        if c1_sq > _closest_distance_sq(reduced.basis.columns, y, 2):
            problems.append("c1^2 exceeds an enumerated lattice distance")
        failures += [f"case {case} (dim {dim}): {p}" for p in problems]
    return _report("lll", checked, failures, seed=opts.seed)


GUZ_SAMPLES: Dict[int, List[int]] = {1: [5, 50, 1000], 2: [257, 500, 1000], 3: [46657, 50000, 100000]}
GUZ_SCAN_LIMIT = 200_000


def suite_guz(opts: SuiteOptions) -> SuiteReport:
    """
    Every integer x with x / (log x)^m < T stays below the Guz bound: an
    exhaustive scan of small x plus a certified check at the bound, past
    which x / (log x)^m is increasing.
    """
    checked, failures = 0, []
    for m, values in GUZ_SAMPLES.items():
        for T in values:
            bound = guz_bound(m, T)
            limit = min(int(10 * bound), GUZ_SCAN_LIMIT)
            for x in range(2, limit):
                if x / math.log(x) ** m < T and not x < bound:
                    failures.append(f"m={m}, T={T}: x={x} escapes the bound {float(bound):.6g}")
                    break
            at_bound = RealInterval.exact(int(gmpy2.ceil(bound)), BITS)
            ratio = at_bound / at_bound.log() ** m
            if not ratio.lower() >= T:
                failures.append(f"m={m}, T={T}: x/(log x)^m not certified >= T at the bound")
            checked += 1
    return _report("guz", checked, failures)


def suite_chains(opts: SuiteOptions) -> SuiteReport:
    """The inequality chains of the main argument, evaluated numerically."""
    checked, failures = 0, []
    for s in opts.s_range(3, 10):
        reports = k_at_most_s_chain(s) + large_n_chain(s) + small_n_chain(s)
        for k in (2, 10, 100, 1000):
            reports += small_k_chain(s, k)
            # log n bound against the uniform form 46 s (log k + log s)
            with rounding(BITS, gmpy2.RoundDown):
                uniform = 46 * s * (gmpy2.log(mpfr(k)) + gmpy2.log(mpfr(s)))
            checked += 1
            if not lemma31_bound(s, k) < uniform:
                failures.append(f"s={s}, k={k}: log n bound exceeds 46 s log(sk)")
        for report in reports:
            checked += 1
            if not report.holds:
                failures.append(
                    f"{report.name} {report.inputs}: {report.value:.6g} vs {report.claim} "
                    f"({report.claimed_value:.6g})"
                )
    return _report("chains", checked, failures)


SUITES: Dict[str, Callable[[SuiteOptions], SuiteReport]] = {
    "identities": suite_identities,
    "binet": suite_binet,
    "roots": suite_roots,
    "fconst": suite_fconst,
    "alpha-power": suite_alpha_power,
    "t11": suite_t11,
    "lll": suite_lll,
    "guz": suite_guz,
    "chains": suite_chains,
}


def run_suite(name: str, opts: Optional[SuiteOptions] = None) -> SuiteReport:
    """
    Run one suite by name.

    Raises:
        DomainError: If the suite name is unknown
    """
    if name not in SUITES:
        raise DomainError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    opts = opts or SuiteOptions()
    report = SUITES[name](opts)
    logger.info("suite %s: %s (%d checks)", name, "pass" if report.passed else "FAIL", report.checked)
    return report
