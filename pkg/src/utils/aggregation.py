"""Statistical aggregation for margins and per-k bounds."""

import statistics
from typing import Dict, Iterable, List, Optional


class MarginAggregator:
    """Summary statistics over numeric margins."""

    @staticmethod
    def calculate_statistics(values: Iterable[float]) -> Dict[str, Optional[float]]:
        """
        Calculate summary statistics for a list of margins.

        Args:
            values: Margins (or bounds) to summarize

        Returns:
            Dictionary with count, min, max, mean, median, std_dev, q1 and q3
        """
        values = [float(v) for v in values]
        if not values:
            return {
                "count": 0,
                "min": None,
                "max": None,
                "mean": None,
                "median": None,
                "std_dev": None,
                "q1": None,
                "q3": None,
            }

        stats: Dict[str, Optional[float]] = {
            "count": len(values),
            "min": min(values),
            "max": max(values),
            "mean": statistics.mean(values),
            "median": statistics.median(values),
        }

        # Standard deviation and quartiles need at least 2 values
        if len(values) > 1:
            stats["std_dev"] = statistics.stdev(values)
            quantiles = statistics.quantiles(values, n=4)
            stats["q1"] = quantiles[0]
            stats["q3"] = quantiles[2]
        else:
            stats["std_dev"] = 0.0
            stats["q1"] = None
            stats["q3"] = None

        return stats

    @staticmethod
    def argmax(pairs: Iterable[tuple]) -> Optional[tuple]:
        """The (key, value) pair with the largest value, first one on ties."""
        best: Optional[tuple] = None
        for key, value in pairs:
            if value is not None and (best is None or value > best[1]):
                best = (key, value)
        return best

    @staticmethod
    def histogram(values: Iterable[int], width: int) -> List[tuple]:
        """Counts of integer values per bucket [lo, lo + width)."""
        buckets: Dict[int, int] = {}
        for v in values:
            lo = (v // width) * width
            buckets[lo] = buckets.get(lo, 0) + 1
        return sorted(buckets.items())
