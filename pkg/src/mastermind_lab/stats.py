"""Statistical primitives for paired strategy comparisons.

Only what the experiment harness needs: summary statistics with the standard
error of the mean, and a two-sided Wilcoxon signed-rank test.  The signed-
rank test follows the standard conventions: zero differences are dropped,
tied absolute differences share their mid-rank, and the reference
distribution is exact (full enumeration over sign assignments, computed by
dynamic programming) for up to 25 nonzero pairs, switching to the normal
approximation with tie-corrected variance and continuity correction above
that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import median
from typing import NamedTuple, Sequence

EXACT_MAX_N = 25


@dataclass(frozen=True)
class PairedSample:
    """Two aligned sequences of per-game observations."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError(
                f"paired sample lengths differ: {len(self.a)} vs {len(self.b)}"
            )
        if len(self.a) == 0:
            raise ValueError("paired sample must not be empty")

    @classmethod
    def of(cls, a: Sequence[float], b: Sequence[float]) -> "PairedSample":
        return cls(tuple(a), tuple(b))


class SummaryStats(NamedTuple):
    mean: float
    sem: float
    sd: float
    median: float
    max: float


def mean_sem(values: Sequence[float]) -> SummaryStats:
    """Mean, standard error (sample sd / sqrt(n)), sd, median, and max.

    A single observation has sd and sem 0 by convention, keeping degenerate
    summaries total.
    """
    if not values:
        raise ValueError("mean_sem needs at least one value")
    n = len(values)
    mean = sum(values) / n
    if n == 1:
        sd = 0.0
    else:
        sd = math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))
    return SummaryStats(mean, sd / math.sqrt(n), sd, float(median(values)), float(max(values)))


def _midranks(magnitudes: list[float]) -> list[float]:
    order = sorted(range(len(magnitudes)), key=magnitudes.__getitem__)
    ranks = [0.0] * len(magnitudes)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and magnitudes[order[j + 1]] == magnitudes[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1  # average of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _exact_p(ranks: list[float], t_plus: float) -> float:
    # Distribution of the positive-rank sum over all 2^n sign assignments of
    # the observed |difference| ranks.  Doubling makes mid-ranks integral so
    # the subset-sum table stays exact.
    doubled = [round(2 * r) for r in ranks]
    total = sum(doubled)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in doubled:
        for s in range(total, r - 1, -1):
            if counts[s - r]:
                counts[s] += counts[s - r]
    t2 = round(2 * t_plus)
    n_assignments = 2 ** len(ranks)
    p_low = sum(counts[: t2 + 1]) / n_assignments
    p_high = sum(counts[t2:]) / n_assignments
    return min(1.0, 2.0 * min(p_low, p_high))


def _approx_p(ranks: list[float], t_plus: float) -> float:
    n = len(ranks)
    mu = n * (n + 1) / 4
    variance = n * (n + 1) * (2 * n + 1) / 24
    # tie correction: each group of t equal magnitudes removes (t^3 - t)/48
    seen: dict[float, int] = {}
    for r in ranks:
        seen[r] = seen.get(r, 0) + 1
    for t in seen.values():
        variance -= (t**3 - t) / 48
    sigma = math.sqrt(variance)
    offset = t_plus - mu
    if offset > 0.5:
        offset -= 0.5
    elif offset < -0.5:
        offset += 0.5
    else:
        offset = 0.0
    z = offset / sigma
    return min(1.0, math.erfc(abs(z) / math.sqrt(2)))


def wilcoxon_signed_rank(sample: PairedSample) -> float:
    """Two-sided p-value of the paired signed-rank test.

    All-zero differences return 1.0: the data carry no evidence either way.
    """
    diffs = [x - y for x, y in zip(sample.a, sample.b) if x != y]
    if not diffs:
        return 1.0
    ranks = _midranks([abs(d) for d in diffs])
    t_plus = sum(r for d, r in zip(diffs, ranks) if d > 0)
    if len(diffs) <= EXACT_MAX_N:
        return _exact_p(ranks, t_plus)
    return _approx_p(ranks, t_plus)
