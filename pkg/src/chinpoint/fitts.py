"""Index-of-difficulty arithmetic, regression, and performance summary.

The effective index uses the information-theoretic spread constant
sqrt(2*pi*e) at full precision; the familiar 4.133 is its 3-decimal
rounding. Spread (SD) is the sample standard deviation of the scalar
endpoint-to-target-center distances, n-1 denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .stats import f_sf
from .tasks.pointing import TrialRecord2D

SQRT_2PI_E = math.sqrt(2.0 * math.pi * math.e)


class AnalysisError(ValueError):
    """Input cannot be analyzed (empty cells, bad grid, rank deficiency)."""


class DegenerateSpreadError(AnalysisError):
    """Endpoint spread is zero or negative; IDe is undefined."""


def nominal_id(distance: float, width: float) -> float:
    """log2(D/W + 1) bits."""
    if width <= 0:
        raise AnalysisError(f"width must be > 0, got {width}")
    if distance < 0:
        raise AnalysisError(f"distance must be >= 0, got {distance}")
    return math.log2(distance / width + 1.0)


def effective_id(de: float, sd: float) -> float:
    """log2(De / (sqrt(2*pi*e) * SD) + 1) bits."""
    if sd <= 0:
        raise DegenerateSpreadError(f"endpoint spread must be > 0, got {sd}")
    if de < 0:
        raise AnalysisError(f"effective distance must be >= 0, got {de}")
    return math.log2(de / (SQRT_2PI_E * sd) + 1.0)


@dataclass(frozen=True)
class ConditionStats:
    width: float
    distance: float
    trial_count: int
    id_nominal: float
    de: float
    sd: float
    ide: float
    ste: float


def condition_stats(trials: Sequence[TrialRecord2D],
                    include_center: bool = True) -> list[ConditionStats]:
    """Collapse trials into (width, distance) cells, orientation ignored.

    Cells are ordered by (distance, width). Every cell needs at least
    two trials, otherwise the spread estimate does not exist.
    """
    cells: dict[tuple[float, float], list[TrialRecord2D]] = {}
    for t in trials:
        if t.target.is_center and not include_center:
            continue
        cells.setdefault((t.distance, t.width), []).append(t)
    if not cells:
        raise AnalysisError("no trials to analyze")

    out: list[ConditionStats] = []
    for (distance, width) in sorted(cells):
        group = cells[(distance, width)]
        if len(group) < 2:
            raise AnalysisError(
                f"condition (W={width}, D={distance}) has {len(group)} trial(s); "
                "need at least 2")
        des = []
        ws = []
        sts = []
        for t in group:
            des.append(math.hypot(t.end_pos[0] - t.start_pos[0],
                                  t.end_pos[1] - t.start_pos[1]))
            tx, ty = t.target_pos
            ws.append(math.hypot(t.end_pos[0] - tx, t.end_pos[1] - ty))
            sts.append(t.selection_time_s)
        n = len(group)
        de = sum(des) / n
        w_mean = sum(ws) / n
        sd = math.sqrt(sum((w - w_mean) ** 2 for w in ws) / (n - 1))
        ste = sum(sts) / n
        out.append(ConditionStats(
            width=width, distance=distance, trial_count=n,
            id_nominal=nominal_id(distance, width),
            de=de, sd=sd, ide=effective_id(de, sd), ste=ste))
    return out


@dataclass(frozen=True)
class FittsFit:
    a: float           # intercept, seconds
    b: float           # slope, seconds per bit
    r_squared: float
    f_stat: float
    df: tuple[int, int]
    p_value: float
    n: int


def fit_fitts(pairs: Sequence[tuple[float, float]]) -> FittsFit:
    """Ordinary least squares of selection time on effective difficulty."""
    n = len(pairs)
    if n < 3:
        raise AnalysisError(f"need at least 3 points, got {n}")
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxx = sum((x - x_mean) ** 2 for x in xs)
    if sxx == 0:
        raise AnalysisError("constant difficulty: regression is rank-deficient")
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    b = sxy / sxx
    a = y_mean - b * x_mean
    ss_tot = sum((y - y_mean) ** 2 for y in ys)
    ss_res = sum((y - (a + b * x)) ** 2 for x, y in zip(xs, ys))
    if ss_tot == 0:
        r_squared = 0.0  # constant response: the line explains nothing
    else:
        r_squared = 1.0 - ss_res / ss_tot
        if r_squared < 0.0:
            r_squared = 0.0
        elif r_squared > 1.0:
            r_squared = 1.0
    df = (1, n - 2)
    if r_squared >= 1.0:
        f_stat = math.inf
        p_value = 0.0
    else:
        f_stat = r_squared * (n - 2) / (1.0 - r_squared)
        p_value = f_sf(f_stat, *df)
    return FittsFit(a=a, b=b, r_squared=r_squared, f_stat=f_stat, df=df,
                    p_value=p_value, n=n)


def throughput(grid: Sequence[Sequence[tuple[float, float]]]) -> float:
    """Mean over participants of mean over conditions of IDe/STe."""
    if not grid:
        raise AnalysisError("empty participant grid")
    m = len(grid[0])
    if m == 0:
        raise AnalysisError("empty condition row")
    per_participant = []
    for row in grid:
        if len(row) != m:
            raise AnalysisError("inconsistent grid: unequal condition counts")
        rates = []
        for ide, ste in row:
            if ste <= 0:
                raise AnalysisError(f"selection time must be > 0, got {ste}")
            rates.append(ide / ste)
        per_participant.append(sum(rates) / m)
    return sum(per_participant) / len(per_participant)


def error_rate(trials: Sequence[TrialRecord2D]) -> float:
    """Percent of trials containing at least one miss click."""
    if not trials:
        raise AnalysisError("no trials")
    bad = sum(1 for t in trials if t.misclicks)
    return 100.0 * bad / len(trials)


def exclusion_filter(trials: Sequence[TrialRecord2D], limit_s: float = 25.0,
                     ) -> tuple[list[TrialRecord2D], float]:
    """Drop trials strictly slower than the limit; a trial at exactly the
    limit is kept. Returns (kept, excluded percent)."""
    kept = [t for t in trials if t.selection_time_s <= limit_s]
    if not trials:
        return kept, 0.0
    return kept, 100.0 * (len(trials) - len(kept)) / len(trials)
