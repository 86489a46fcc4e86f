"""Cohort-level performance tables: regression, throughput, error rate.

The CSV mirrors the summary-table layout used for hands-free pointing
studies: one row per scope (whole cohort, then each participant), with
regression coefficients, F statistics, throughput, error and exclusion
percentages. The text rendering appends published clinical reference
bands as context; those numbers are quoted constants, never asserted.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass
from typing import Sequence

from .fitts import (AnalysisError, ConditionStats, FittsFit, condition_stats,
                    error_rate, exclusion_filter, fit_fitts, throughput)
from .sessionlog import SessionLog
from .tasks.arm import TrialRecord3D, mean_completion_time
from .tasks.pointing import TrialRecord2D

# Published clinical reference values (context only; desk-scale runs are
# not expected to reproduce them).
REFERENCE_THROUGHPUT_BPS = (0.54, 0.05)    # mean, spread
REFERENCE_ERROR_RATE_PCT = (18.38, 3.8)
REFERENCE_ARM_COMPLETION_S = (22.5, 3.5)
REFERENCE_HANDS_FREE_BAND_BPS = (0.3, 1.2)

CSV_COLUMNS = ("label", "scope", "a_s", "b_s_per_bit", "r_squared", "f_stat",
               "df1", "df2", "p_value", "n_points", "throughput_bps",
               "error_rate_pct", "excluded_pct", "trials")


@dataclass(frozen=True)
class ParticipantSummary:
    label: str
    trials: int
    excluded_pct: float
    error_rate_pct: float
    throughput_bps: float
    fit: FittsFit
    cells: tuple[ConditionStats, ...]


@dataclass(frozen=True)
class CohortReport:
    label: str
    fit: FittsFit
    throughput_bps: float
    error_rate_pct: float
    excluded_pct: float
    trials: int
    participants: tuple[ParticipantSummary, ...]


def analyze_cohort(cohort: Sequence[Sequence[TrialRecord2D]],
                   label: str = "cohort",
                   exclude_over_s: float | None = None,
                   include_center: bool = True) -> CohortReport:
    """Full pipeline over a list of per-participant trial lists."""
    if not cohort:
        raise AnalysisError("empty cohort")
    summaries: list[ParticipantSummary] = []
    pooled_pairs: list[tuple[float, float]] = []
    grid: list[list[tuple[float, float]]] = []
    total_trials = 0
    total_kept = 0
    total_errors = 0
    for i, trials in enumerate(cohort):
        trials = list(trials)
        if exclude_over_s is not None:
            kept, excluded_pct = exclusion_filter(trials, exclude_over_s)
        else:
            kept, excluded_pct = trials, 0.0
        cells = condition_stats(kept, include_center=include_center)
        pairs = [(c.ide, c.ste) for c in cells]
        pooled_pairs.extend(pairs)
        grid.append(pairs)
        err = error_rate(kept)
        summaries.append(ParticipantSummary(
            label=f"p{i}", trials=len(kept), excluded_pct=excluded_pct,
            error_rate_pct=err, throughput_bps=throughput([pairs]),
            fit=fit_fitts(pairs), cells=tuple(cells)))
        total_trials += len(trials)
        total_kept += len(kept)
        total_errors += sum(1 for t in kept if t.misclicks)
    m = len(grid[0])
    for pairs in grid:
        if len(pairs) != m:
            raise AnalysisError("inconsistent grids across participants")
    return CohortReport(
        label=label,
        fit=fit_fitts(pooled_pairs),
        throughput_bps=throughput(grid),
        error_rate_pct=100.0 * total_errors / total_kept if total_kept else 0.0,
        excluded_pct=100.0 * (total_trials - total_kept) / total_trials,
        trials=total_kept,
        participants=tuple(summaries))


def _fit_row(label: str, scope: str, fit: FittsFit, tp: float, err: float,
             excl: float, trials: int) -> list[str]:
    return [label, scope, repr(fit.a), repr(fit.b), repr(fit.r_squared),
            repr(fit.f_stat), str(fit.df[0]), str(fit.df[1]),
            repr(fit.p_value), str(fit.n), repr(tp), repr(err), repr(excl),
            str(trials)]


def report_to_csv(reports: Sequence[CohortReport]) -> str:
    """One row per scope; floats in full repr precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        writer.writerow(_fit_row(rep.label, "cohort", rep.fit,
                                 rep.throughput_bps, rep.error_rate_pct,
                                 rep.excluded_pct, rep.trials))
        for p in rep.participants:
            writer.writerow(_fit_row(rep.label, p.label, p.fit,
                                     p.throughput_bps, p.error_rate_pct,
                                     p.excluded_pct, p.trials))
    return buf.getvalue()


def parse_report_csv(text: str) -> list[dict]:
    """Rows back as dicts with floats restored."""
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for raw in reader:
        row: dict = dict(raw)
        for key in ("a_s", "b_s_per_bit", "r_squared", "f_stat", "p_value",
                    "throughput_bps", "error_rate_pct", "excluded_pct"):
            row[key] = float(raw[key])
        for key in ("df1", "df2", "n_points", "trials"):
            row[key] = int(raw[key])
        rows.append(row)
    return rows


def report_to_text(reports: Sequence[CohortReport],
                   reference_footer: bool = True) -> str:
    lines = []
    for rep in reports:
        lines.append(f"=== {rep.label} ===")
        f = rep.fit
        lines.append(f"  ST = {f.a:.3f} + {f.b:.3f} * IDe   "
                     f"(R^2 = {f.r_squared:.3f}, F({f.df[0]},{f.df[1]}) = "
                     f"{f.f_stat:.2f}, p = {f.p_value:.3g}, N = {f.n})")
        lines.append(f"  throughput      {rep.throughput_bps:.3f} bits/s")
        lines.append(f"  error rate      {rep.error_rate_pct:.2f} %")
        lines.append(f"  excluded        {rep.excluded_pct:.2f} %")
        lines.append(f"  trials analyzed {rep.trials}")
        for p in rep.participants:
            lines.append(f"    {p.label}: a={p.fit.a:.3f} b={p.fit.b:.3f} "
                         f"R^2={p.fit.r_squared:.3f} TP={p.throughput_bps:.3f} "
                         f"err={p.error_rate_pct:.1f}% excl={p.excluded_pct:.1f}%")
    if reference_footer:
        tp_m, tp_s = REFERENCE_THROUGHPUT_BPS
        er_m, er_s = REFERENCE_ERROR_RATE_PCT
        ac_m, ac_s = REFERENCE_ARM_COMPLETION_S
        lo, hi = REFERENCE_HANDS_FREE_BAND_BPS
        lines.append("")
        lines.append("Published clinical reference bands (context only, not "
                     "reproduced at desk scale):")
        lines.append(f"  throughput {tp_m} +/- {tp_s} bits/s; "
                     f"error rate {er_m} +/- {er_s} %; "
                     f"arm completion {ac_m} +/- {ac_s} s")
        lines.append(f"  hands-free device range {lo}-{hi} bits/s")
    return "\n".join(lines) + "\n"


def summarize_arm(records: Sequence[TrialRecord3D],
                  expected_trials: int = 20) -> dict:
    """Headline numbers for a reach-and-hold session."""
    mean_s = mean_completion_time(list(records), expected_trials)
    return {
        "trials": len(records),
        "mean_completion_s": mean_s,
        "success_rate_pct": 100.0,  # completion is the only terminal state
    }


def trials2d_from_log(log: SessionLog) -> list[TrialRecord2D]:
    return [TrialRecord2D.from_dict(t) for t in log.trials
            if t.get("kind") == "trial2d"]


def trials3d_from_log(log: SessionLog) -> list[TrialRecord3D]:
    return [TrialRecord3D.from_dict(t) for t in log.trials
            if t.get("kind") == "trial3d"]
