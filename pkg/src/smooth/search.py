"""Sweep for 7-smooth k-generalized Lucas numbers.

Each k is an independent shard: its terms are streamed from n = k + 1 up to
the shard's n bound and tested with trial division by 2, 3, 5 and 7 only.
Shards run in a process pool; the parent collects results and is the only
writer of the checkpoint file.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from src.errors import DomainError
from src.models.schemas import SolutionRecord
from src.sequence.window import stream, term
from src.smooth.factor import smooth_part

logger = logging.getLogger(__name__)

NBound = Union[int, Callable[[int], int]]


class Checkpoint:
    """
    Append-only record of finished shards.

    Lines are "k n hit" for each smooth term and "k n_hi done" once shard k
    has been swept up to n_hi. Malformed lines, such as a torn last line
    after a crash, are ignored.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def load(self) -> Tuple[Dict[int, int], Dict[int, List[int]]]:
        """Return (k -> n_hi of finished shards, k -> hit indices)."""
        done: Dict[int, int] = {}
        hits: Dict[int, List[int]] = {}
        if not self.path.exists():
            return done, hits
        with open(self.path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                parts = line.split()
                if len(parts) != 3 or parts[2] not in ("hit", "done"):
                    logger.warning("%s:%d: ignoring malformed checkpoint line", self.path, lineno)
                    continue
                try:
                    k, n = int(parts[0]), int(parts[1])
                except ValueError:
                    logger.warning("%s:%d: ignoring malformed checkpoint line", self.path, lineno)
                    continue
                if parts[2] == "hit":
                    hits.setdefault(k, []).append(n)
                else:
                    done[k] = max(n, done.get(k, n))
        return done, {k: sorted(set(ns)) for k, ns in hits.items()}

    def record_shard(self, k: int, n_hi: int, hit_ns: List[int]) -> None:
        """Append one finished shard and flush it to disk."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            for n in hit_ns:
                f.write(f"{k} {n} hit\n")
            f.write(f"{k} {n_hi} done\n")
            f.flush()
            os.fsync(f.fileno())


def _bound_for(n_hi: NBound, k: int) -> int:
    return n_hi(k) if callable(n_hi) else n_hi


def scan_k(k: int, n_hi: int) -> List[int]:
    """Indices n in [k + 1, n_hi] with L_n^(k) 7-smooth."""
    if n_hi < k + 1:
        return []
    return [n for n, value in stream(k, k + 1, n_hi) if smooth_part(value).is_smooth]


def _record(k: int, n: int) -> SolutionRecord:
    value = term(k, n)
    return SolutionRecord(k=k, n=n, value=value, factorization=smooth_part(value))


def search(
    k_lo: int,
    k_hi: int,
    n_hi: NBound = 1449,
    workers: Optional[int] = None,
    checkpoint: Optional[Union[str, Path]] = None,
) -> List[SolutionRecord]:
    """
    All sporadic 7-smooth terms L_n^(k) with k_lo <= k <= k_hi and k < n <= n_hi(k).

    Args:
        k_lo: Smallest order, at least 2
        k_hi: Largest order
        n_hi: Upper index bound, either a constant or a function of k
        workers: Process pool size (None uses every core, 1 runs inline)
        checkpoint: Optional checkpoint file; finished shards in it are reused

    Returns:
        Records sorted by (k, n)

    Raises:
        DomainError: If the k range is invalid
    """
    if not 2 <= k_lo <= k_hi:
        raise DomainError(f"invalid k range {k_lo}..{k_hi}")

    store = Checkpoint(checkpoint) if checkpoint else None
    done, stored_hits = store.load() if store else ({}, {})

    hits: Dict[int, List[int]] = {}
    pending: List[Tuple[int, int]] = []
    for k in range(k_lo, k_hi + 1):
        bound = _bound_for(n_hi, k)
        if k in done and done[k] >= bound:
            hits[k] = [n for n in stored_hits.get(k, []) if n <= bound]
        else:
            pending.append((k, bound))
    if done:
        logger.info("resuming: %d shards from checkpoint, %d to run", len(hits), len(pending))

    def collect(k: int, bound: int, found: List[int]) -> None:
        hits[k] = found
        if store:
            store.record_shard(k, bound, found)

    workers = workers or os.cpu_count() or 1
    if workers == 1 or len(pending) <= 1:
        for k, bound in pending:
            collect(k, bound, scan_k(k, bound))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(scan_k, k, bound): (k, bound) for k, bound in pending}
            for future in as_completed(futures):
                k, bound = futures[future]
                collect(k, bound, future.result())

    records = [_record(k, n) for k in sorted(hits) for n in hits[k]]
    logger.info("search k=%d..%d: %d sporadic records", k_lo, k_hi, len(records))
    return records


def family_records(k_lo: int, k_hi: int) -> List[SolutionRecord]:
    """The closed-form terms L_n^(k) = 3 * 2^(n-2) for 2 <= n <= k."""
    if not 2 <= k_lo <= k_hi:
        raise DomainError(f"invalid k range {k_lo}..{k_hi}")
    records = []
    for k in range(k_lo, k_hi + 1):
        for n, value in stream(k, 2, k):
            records.append(
                SolutionRecord(
                    k=k, n=n, value=value, factorization=smooth_part(value), family="closed-form"
                )
            )
    return records
