"""Command-line entry point: `klucas <command> [options]`.

Commands:
    seq      terms of L^(k)
    root     digits of the dominant root alpha(k)
    reduce   small-k or large-k lattice reduction
    search   sweep for 7-smooth terms
    verify   run a verification suite
    certify  large-k chain, per-k reductions and the sweep end to end

Exit codes: 0 ok, 1 check failure, 2 usage or domain error, 3 resource cap.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from src import __version__
from src.analytic.roots import dominant_root, root_digits
from src.config.loader import ConfigLoader, PipelineConfig
from src.config.validator import print_validation_warnings, validate_config
from src.errors import CheckFailure, DomainError, KlucasError
from src.lattice.reduction import small_k_sweep
from src.pipeline.orchestrate import certify, n_bound_from, run_large_k, run_search, run_small_k
from src.sequence.window import stream, term
from src.smooth.search import family_records
from src.utils.aggregation import MarginAggregator
from src.utils.exporters import JSONExporter, write_certificate
from src.utils.provenance import stamp_certificate
from src.verify.suites import SUITES, SuiteOptions, run_suite

logger = logging.getLogger("klucas")

LOG_LEVELS = {"quiet": logging.WARNING, "normal": logging.INFO, "trace": logging.DEBUG}


def parse_range(text: str) -> Tuple[int, int]:
    """Parse 'a..b' (or a single integer) into an inclusive pair."""
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got '{text}'")
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range '{text}'")
    return lo_i, hi_i


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=LOG_LEVELS[level],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML, JSON or key=value configuration file")
    common.add_argument("--workers", type=int, help="worker processes (default: logical cores)")
    common.add_argument("--out", type=Path, help="directory for certificates and CSV files")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_const", const="quiet", dest="log_level")
    verbosity.add_argument("--trace", action="store_const", const="trace", dest="log_level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="klucas",
        description="Certified computations on k-generalized Lucas numbers and their 7-smooth terms.",
    )
    parser.add_argument("--version", action="version", version=f"klucas {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="print terms of L^(k)")
    p.add_argument("--k", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="single index (at least 2 - k)")
    which.add_argument("--range", type=parse_range, dest="n_range", metavar="A..B")

    p = sub.add_parser("root", parents=[common], help="digits of the dominant root")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--json", action="store_true", help="print the root certificate instead")

    p = sub.add_parser("reduce", parents=[common], help="lattice reduction of a case")
    p.add_argument("--case", choices=["small-k", "large-k"], required=True)
    p.add_argument("--k", type=parse_range, metavar="K|A..B", help="k or k range (small-k only)")
    p.add_argument("--c-exponent", type=int, help="scale C = 10^E for the small-k lattices")
    p.add_argument("--max-retries", type=int, help="scale retries before giving up")

    p = sub.add_parser("search", parents=[common], help="sweep for 7-smooth terms")
    p.add_argument("--k", type=parse_range, metavar="A..B")
    p.add_argument("--n-max", type=int)
    p.add_argument("--resume", action="store_true", help="reuse and extend the checkpoint")
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--families", action="store_true", help="also list the 3*2^(n-2) family")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--k", type=parse_range, metavar="A..B")
    p.add_argument("--k-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--s", type=parse_range, metavar="A..B")
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int)

    sub.add_parser("certify", parents=[common], help="run reduce and search end to end")
    return parser


def load_config(args: argparse.Namespace) -> PipelineConfig:
    """Configuration file and environment, then command-line flags on top."""
    config = ConfigLoader.load(args.config)
    updates = {}
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.out is not None:
        updates["output_dir"] = args.out
    if args.log_level is not None:
        updates["log_level"] = args.log_level
    if updates:
        config = PipelineConfig.model_validate({**config.model_dump(), **updates})
    return config


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_seq(args: argparse.Namespace, config: PipelineConfig) -> int:
    if args.n is not None:
        print(term(args.k, args.n))
    else:
        lo, hi = args.n_range
        print(" ".join(str(value) for _, value in stream(args.k, lo, hi)))
    return 0


def cmd_root(args: argparse.Namespace, config: PipelineConfig) -> int:
    digits = root_digits(args.k, args.digits, config.precision.max_bits)
    if not args.json:
        print(digits)
        return 0
    bits = max(config.precision.initial_bits, int(args.digits * 3.33) + 16)
    cert = dominant_root(args.k, bits, config.precision.max_bits)
    stamped = stamp_certificate(
        "root",
        {"k": args.k, "digits": args.digits, "precision_bits": bits},
        {"digits": digits, "certificate": cert, "check": cert.check()},
    )
    print(JSONExporter.export_certificate(stamped))
    return 0


def _reduce_small_k(args: argparse.Namespace, config: PipelineConfig) -> int:
    settings = config.reduction
    k_lo, k_hi = args.k or (config.search.k_min, config.search.k_max)
    if k_lo != k_hi:
        summary = run_small_k(config, k_lo, k_hi)
        bound_ceil = math.ceil(summary.max_bound)
        print(f"max n-1 bound over k in [{k_lo},{k_hi}]: <= {bound_ceil} (at k = {summary.argmax_k})")
        buckets = MarginAggregator.histogram(
            (n_bound_from(c) for c in summary.certificates), width=100
        )
        for lo, count in buckets:
            print(f"  n bound in [{lo}, {lo + 100}): {count} values of k")
        print(f"certificates: {config.output_dir}")
        return 0

    k = k_lo
    cert = small_k_sweep(k, k, settings, workers=1, max_bits=config.precision.max_bits)[0]
    stamped = stamp_certificate(
        "reduction", {"case": "small-k", "k": k, "settings": settings}, {"certificate": cert}
    )
    path = write_certificate(stamped, config.output_dir, f"reduce-small-k-{k}")
    print(
        f"k = {k}: {cert.bound_on} <= {math.floor(cert.H_bound)} "
        f"(dim {cert.dim}, {cert.attempts} attempt(s), {cert.degenerate_branch})"
    )
    print(f"certificate: {path}")
    return 0


def _reduce_large_k(config: PipelineConfig) -> int:
    chain = run_large_k(config)
    for i, (k_bound, n_bound) in enumerate(zip(chain.k_bounds, chain.n_bounds), start=1):
        print(f"round {i}: k <= {k_bound}, n <= {n_bound:.4g}")
    rounds = len(chain.rounds)
    if chain.closed:
        print(f"k < {chain.target} after {rounds} rounds")
    else:
        print(f"stopped at k <= {chain.final_k_bound} after {rounds} rounds ({chain.stop_reason})")
    print(f"certificates: {config.output_dir}")
    return 0


def cmd_reduce(args: argparse.Namespace, config: PipelineConfig) -> int:
    reduction = config.reduction.model_copy(
        update={
            key: value
            for key, value in (
                ("small_k_c_exponent", args.c_exponent),
                ("small_k_max_retries", args.max_retries),
                ("large_k_max_retries", args.max_retries),
            )
            if value is not None
        }
    )
    config = config.model_copy(update={"reduction": reduction})
    if args.case == "large-k":
        if args.k is not None:
            raise DomainError("--k applies to the small-k case only")
        return _reduce_large_k(config)
    return _reduce_small_k(args, config)


def cmd_search(args: argparse.Namespace, config: PipelineConfig) -> int:
    k_lo, k_hi = args.k or (config.search.k_min, config.search.k_max)
    if k_lo < 2:
        raise DomainError(f"k must be at least 2, got {k_lo}")
    if args.checkpoint is not None:
        config = config.model_copy(
            update={"search": config.search.model_copy(update={"checkpoint": args.checkpoint})}
        )
    summary = run_search(config, k_lo, k_hi, args.n_max, resume=args.resume)
    for r in summary.records:
        print(f"k={r.k} n={r.n} L={r.value} = {r.factorization.describe()}")
    print(f"{len(summary.records)} records for k in [{k_lo},{k_hi}], n <= {summary.n_max}")
    if args.families:
        family = family_records(k_lo, k_hi)
        print(f"{len(family)} closed-form terms L_n = 3*2^(n-2) with 2 <= n <= k")
    return 0


def cmd_verify(args: argparse.Namespace, config: PipelineConfig) -> int:
    options = {"factoring": config.factoring}
    if args.k is not None:
        options["k_lo"], options["k_hi"] = args.k
    if args.k_max is not None:
        options["k_hi"] = args.k_max
    if args.s is not None:
        options["s_lo"], options["s_hi"] = args.s
    for key in ("n_max", "cases", "seed"):
        if getattr(args, key) is not None:
            options[key] = getattr(args, key)
    try:
        opts = SuiteOptions(**options)
    except ValueError as e:
        raise DomainError(f"invalid suite options: {e}")

    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failed: List[str] = []
    for name in names:
        report = run_suite(name, opts)
        print(f"{name}: {'pass' if report.passed else 'FAIL'} ({report.checked} checks)")
        for failure in report.failures[:20]:
            print(f"  - {failure}")
        if not report.passed:
            failed.append(name)
    if failed:
        raise CheckFailure(f"failed suites: {', '.join(failed)}")
    return 0


def cmd_certify(args: argparse.Namespace, config: PipelineConfig) -> int:
    outcome = certify(config)
    large = outcome.large_k
    print(f"large-k chain: k <= {large.final_k_bound} after {len(large.rounds)} rounds ({large.stop_reason})")
    print(
        f"small-k reductions over k in [{config.search.k_min},{outcome.swept_k_hi}]: "
        f"max bound {math.ceil(outcome.small_k.max_bound)} at k = {outcome.small_k.argmax_k}"
    )
    for r in outcome.search.records:
        print(f"  k={r.k} n={r.n} L={r.value}")
    print(f"{len(outcome.search.records)} sporadic solutions, {outcome.family_count} closed-form terms")
    print("all k covered" if outcome.closed else "coverage incomplete")
    for path in outcome.files:
        print(f"wrote {path}")
    if not outcome.closed:
        raise CheckFailure("the sweep does not cover the large-k bound")
    return 0


COMMANDS = {
    "seq": cmd_seq,
    "root": cmd_root,
    "reduce": cmd_reduce,
    "search": cmd_search,
    "verify": cmd_verify,
    "certify": cmd_certify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = load_config(args)
        configure_logging(config.log_level)
        logger.debug("configuration: %s", config.model_dump_json())
        if args.command in ("reduce", "search", "certify"):
            print_validation_warnings(validate_config(config))
        return COMMANDS[args.command](args, config)
    except KlucasError as e:
        print(f"klucas {args.command}: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"klucas {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
