"""Rank tests and regression tail probabilities.

Both Wilcoxon tests are exact for small samples: the rank-sum null
distribution is enumerated by subset-sum counting and the signed-rank
null by sign-pattern counting. Larger samples (or pooled ties in the
rank-sum case) fall back to the normal approximation with tie and
continuity corrections, and the result says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from scipy import special

EXACT_LIMIT = 20


class StatsError(ValueError):
    """Degenerate input to a test (empty or all-zero)."""


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float
    p_value: float
    method: str  # "exact" or "normal"
    n: int
    tied: bool = False


def _midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # mean of 1-based positions i+1..j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _tie_term(values: Sequence[float]) -> float:
    """Sum of t^3 - t over tie groups."""
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return float(sum(t ** 3 - t for t in counts.values() if t > 1))


def _norm_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _two_sided_from_cdf(p_le: float, p_ge: float) -> float:
    return min(1.0, 2.0 * min(p_le, p_ge))


def wilcoxon_rank_sum(x: Sequence[float], y: Sequence[float]) -> WilcoxonResult:
    """Two-sided rank-sum test; statistic is the rank sum of x."""
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise StatsError("both samples must be non-empty")
    pooled = list(x) + list(y)
    total = n + m
    ranks = _midranks(pooled)
    w = sum(ranks[:n])
    tied = len(set(pooled)) != total

    if total <= EXACT_LIMIT and not tied:
        # Count k-subsets of ranks 1..total by sum.
        max_sum = total * (total + 1) // 2
        table = [[0] * (max_sum + 1) for _ in range(n + 1)]
        table[0][0] = 1
        for r in range(1, total + 1):
            for k in range(min(n, r), 0, -1):
                row, prev = table[k], table[k - 1]
                for s in range(max_sum, r - 1, -1):
                    if prev[s - r]:
                        row[s] += prev[s - r]
        counts = table[n]
        denom = float(math.comb(total, n))
        w_int = int(round(w))
        p_le = sum(counts[: w_int + 1]) / denom
        p_ge = sum(counts[w_int:]) / denom
        return WilcoxonResult(w, _two_sided_from_cdf(p_le, p_ge),
                              "exact", total, tied=False)

    mean = n * (total + 1) / 2.0
    tie_corr = _tie_term(pooled) / (total * (total - 1))
    var = n * m / 12.0 * ((total + 1) - tie_corr)
    if var <= 0:
        raise StatsError("zero variance: all pooled values identical")
    sd = math.sqrt(var)
    if w > mean:
        z = (w - mean - 0.5) / sd
    elif w < mean:
        z = (w - mean + 0.5) / sd
    else:
        z = 0.0
    p = min(1.0, 2.0 * _norm_sf(abs(z)))
    return WilcoxonResult(w, p, "normal", total, tied=tied)


def wilcoxon_signed_rank(x: Sequence[float],
                         y: Sequence[float] | None = None,
                         zero_method: str = "drop") -> WilcoxonResult:
    """Two-sided signed-rank test; statistic is the positive-rank sum.

    With y given, tests paired differences x - y. Zero differences are
    dropped before ranking by default; zero_method="pratt" instead keeps
    them in the ranking (they take the lowest ranks) and then discards
    their ranks from the statistic and the null.
    """
    if zero_method not in ("drop", "pratt"):
        raise StatsError(f"unknown zero_method {zero_method!r}")
    if y is not None:
        if len(x) != len(y):
            raise StatsError("paired samples must have equal length")
        diffs = [a - b for a, b in zip(x, y)]
    else:
        diffs = list(x)
    if all(d == 0 for d in diffs):
        raise StatsError("all differences are zero")
    if zero_method == "drop":
        diffs = [d for d in diffs if d != 0]
        all_ranks = _midranks([abs(d) for d in diffs])
        pairs = list(zip(all_ranks, diffs))
    else:
        all_ranks = _midranks([abs(d) for d in diffs])
        pairs = [(r, d) for r, d in zip(all_ranks, diffs) if d != 0]
    n = len(pairs)
    ranks = [r for r, _ in pairs]
    w_pos = sum(r for r, d in pairs if d > 0)

    if n <= EXACT_LIMIT:
        # Midranks can end in .5; doubling makes every rank an integer.
        doubled = [int(round(2 * r)) for r in ranks]
        max_sum = sum(doubled)
        counts = [0] * (max_sum + 1)
        counts[0] = 1
        for r2 in doubled:
            for s in range(max_sum, r2 - 1, -1):
                if counts[s - r2]:
                    counts[s] += counts[s - r2]
        denom = float(2 ** n)
        w2 = int(round(2 * w_pos))
        p_le = sum(counts[: w2 + 1]) / denom
        p_ge = sum(counts[w2:]) / denom
        tied = len(set(abs(d) for _, d in pairs)) != n
        return WilcoxonResult(w_pos, _two_sided_from_cdf(p_le, p_ge),
                              "exact", n, tied=tied)

    # Under independent sign flips W+ = sum r_i * Bernoulli(1/2), so the
    # first two moments below are exact for any rank multiset (midranks
    # and Pratt-style zero handling included).
    mean = sum(ranks) / 2.0
    var = sum(r * r for r in ranks) / 4.0
    if var <= 0:
        raise StatsError("zero variance in signed ranks")
    sd = math.sqrt(var)
    if w_pos > mean:
        z = (w_pos - mean - 0.5) / sd
    elif w_pos < mean:
        z = (w_pos - mean + 0.5) / sd
    else:
        z = 0.0
    p = min(1.0, 2.0 * _norm_sf(abs(z)))
    tied = len(set(abs(d) for _, d in pairs)) != n
    return WilcoxonResult(w_pos, p, "normal", n, tied=tied)


def f_sf(f_stat: float, df1: int, df2: int) -> float:
    """P(F >= f_stat) for the F(df1, df2) distribution.

    Evaluated through the regularized incomplete beta function.
    """
    if df1 <= 0 or df2 <= 0:
        raise StatsError("degrees of freedom must be positive")
    if f_stat <= 0:
        return 1.0
    x = df2 / (df2 + df1 * f_stat)
    return float(special.betainc(df2 / 2.0, df1 / 2.0, x))
