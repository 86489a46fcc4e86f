"""Difficulty arithmetic, regression and throughput tests.

Condition statistics are checked against hand-computed cells and a numpy
re-aggregation; the regression against numpy.polyfit and scipy.linregress;
difficulty values against independently tabulated constants.
"""

import math
import random

import numpy as np
import pytest
from scipy.stats import linregress

from chinpoint.fitts import (SQRT_2PI_E, AnalysisError, DegenerateSpreadError,
                             condition_stats, effective_id, error_rate,
                             exclusion_filter, fit_fitts, nominal_id,
                             throughput)
from chinpoint.tasks.pointing import TrialRecord2D
from chinpoint.tasks.targets import TargetSpec2D


def rec(start, end, target_pos, width=30.0, distance=122.0, st_s=1.0,
        misclicks=(), is_center=False):
    return TrialRecord2D(
        trial_index=0, run_index=0,
        target=TargetSpec2D(0.0, width, 0.0 if is_center else distance,
                            is_center),
        target_pos=target_pos, width=width, distance=distance,
        start_pos=start, end_pos=end, onset_t=0.0,
        success_click_t=st_s * 1000.0, misclicks=tuple(misclicks),
        path=(start, end))


class TestDifficulty:
    def test_nominal_id_grid_matches_tabulated_values(self):
        # two-decimal difficulty table for the 2x3 condition grid
        expected = {(122.0, 30.0): 2.34, (122.0, 61.0): 1.58,
                    (244.0, 30.0): 3.19, (244.0, 61.0): 2.32,
                    (300.0, 30.0): 3.46, (300.0, 61.0): 2.57}
        for (d, w), want in expected.items():
            assert nominal_id(d, w) == pytest.approx(want, abs=0.005)

    def test_nominal_id_zero_distance(self):
        assert nominal_id(0.0, 30.0) == 0.0

    def test_nominal_id_rejects_bad_geometry(self):
        with pytest.raises(AnalysisError):
            nominal_id(100.0, 0.0)
        with pytest.raises(AnalysisError):
            nominal_id(-1.0, 30.0)

    def test_effective_id_example(self):
        # log2(100 / (sqrt(2 pi e) * 10) + 1), evaluated independently
        assert effective_id(100.0, 10.0) == pytest.approx(1.7738728239,
                                                          abs=1e-9)

    def test_effective_id_inverts_cleanly(self):
        rng = random.Random(51)
        for _ in range(1000):
            de = rng.uniform(0.0, 500.0)
            sd = rng.uniform(0.1, 50.0)
            ide = effective_id(de, sd)
            assert 2.0 ** ide - 1.0 == pytest.approx(de / (SQRT_2PI_E * sd),
                                                     rel=1e-9, abs=1e-9)

    def test_spread_matched_distance_is_one_bit(self):
        for sd in (0.5, 3.0, 41.0):
            assert effective_id(SQRT_2PI_E * sd, sd) == pytest.approx(1.0,
                                                                      abs=1e-12)

    def test_effective_id_rejects_degenerate_spread(self):
        with pytest.raises(DegenerateSpreadError):
            effective_id(100.0, 0.0)
        with pytest.raises(AnalysisError):
            effective_id(-5.0, 1.0)


class TestConditionStats:
    def test_hand_computed_cell(self):
        target = (122.0, 0.0)
        trials = [rec((0.0, 0.0), (100.0, 0.0), target),
                  rec((0.0, 0.0), (140.0, 0.0), target)]
        (cell,) = condition_stats(trials)
        assert cell.trial_count == 2
        assert cell.de == pytest.approx(120.0)
        # endpoint errors 22 and 18: SD = sqrt(8)
        assert cell.sd == pytest.approx(math.sqrt(8.0))
        assert cell.ide == pytest.approx(
            math.log2(120.0 / (SQRT_2PI_E * math.sqrt(8.0)) + 1.0))
        assert cell.ste == pytest.approx(1.0)
        assert cell.id_nominal == pytest.approx(nominal_id(122.0, 30.0))

    def test_cells_sorted_by_distance_then_width(self):
        trials = []
        for d, w in ((300.0, 61.0), (122.0, 61.0), (122.0, 30.0),
                     (244.0, 30.0)):
            target = (400.0 + d, 400.0)
            trials += [rec((400.0, 400.0), (400.0 + d + 1.0, 400.0), target,
                           width=w, distance=d),
                       rec((400.0, 400.0), (400.0 + d - 3.0, 400.0), target,
                           width=w, distance=d)]
        cells = condition_stats(trials)
        assert [(c.distance, c.width) for c in cells] == [
            (122.0, 30.0), (122.0, 61.0), (244.0, 30.0), (300.0, 61.0)]

    def test_matches_numpy_aggregation(self):
        rng = np.random.default_rng(52)
        target = (522.0, 400.0)
        ends = rng.normal((522.0, 400.0), 6.0, size=(40, 2))
        times = rng.uniform(0.8, 3.0, 40)
        trials = [rec((400.0, 400.0), tuple(e), target, st_s=t)
                  for e, t in zip(ends, times)]
        (cell,) = condition_stats(trials)
        des = np.hypot(ends[:, 0] - 400.0, ends[:, 1] - 400.0)
        errs = np.hypot(ends[:, 0] - 522.0, ends[:, 1] - 400.0)
        assert cell.de == pytest.approx(des.mean(), rel=1e-12)
        assert cell.sd == pytest.approx(errs.std(ddof=1), rel=1e-12)
        assert cell.ste == pytest.approx(times.mean(), rel=1e-12)

    def test_center_trials_share_the_condition_cell(self):
        target = (522.0, 400.0)
        trials = [rec((400.0, 400.0), (523.0, 400.0), target),
                  rec((400.0, 400.0), (519.0, 400.0), target),
                  rec((522.0, 400.0), (401.0, 400.0), (400.0, 400.0),
                      is_center=True),
                  rec((522.0, 400.0), (398.0, 400.0), (400.0, 400.0),
                      is_center=True)]
        (cell,) = condition_stats(trials)
        assert cell.trial_count == 4

    def test_include_center_false_drops_center_reaches(self):
        target = (522.0, 400.0)
        trials = [rec((400.0, 400.0), (523.0, 400.0), target),
                  rec((400.0, 400.0), (519.0, 400.0), target),
                  rec((522.0, 400.0), (401.0, 400.0), (400.0, 400.0),
                      is_center=True)]
        (cell,) = condition_stats(trials, include_center=False)
        assert cell.trial_count == 2

    def test_single_trial_cell_rejected(self):
        trials = [rec((0.0, 0.0), (100.0, 0.0), (122.0, 0.0))]
        with pytest.raises(AnalysisError):
            condition_stats(trials)

    def test_no_trials_rejected(self):
        with pytest.raises(AnalysisError):
            condition_stats([])

    def test_identical_endpoints_degenerate(self):
        trials = [rec((0.0, 0.0), (120.0, 0.0), (122.0, 0.0)),
                  rec((0.0, 0.0), (120.0, 0.0), (122.0, 0.0))]
        with pytest.raises(DegenerateSpreadError):
            condition_stats(trials)


class TestFit:
    def test_exact_line(self):
        fit = fit_fitts([(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)])
        assert fit.a == pytest.approx(1.0)
        assert fit.b == pytest.approx(2.0)
        assert fit.r_squared == 1.0
        assert fit.f_stat == math.inf
        assert fit.p_value == 0.0

    def test_constant_response(self):
        fit = fit_fitts([(1.0, 2.0), (2.0, 2.0), (3.0, 2.0)])
        assert fit.b == 0.0
        assert fit.r_squared == 0.0
        assert fit.f_stat == 0.0
        assert fit.p_value == 1.0

    def test_matches_numpy_and_scipy(self):
        rng = np.random.default_rng(53)
        for _ in range(10):
            x = rng.uniform(1.0, 4.0, 30)
            y = 0.6 + 1.7 * x + rng.normal(0.0, 0.3, 30)
            fit = fit_fitts(list(zip(x, y)))
            slope, intercept = np.polyfit(x, y, 1)
            lr = linregress(x, y)
            assert fit.b == pytest.approx(slope, rel=1e-9)
            assert fit.a == pytest.approx(intercept, rel=1e-9)
            assert fit.r_squared == pytest.approx(lr.rvalue ** 2, rel=1e-9)
            assert fit.p_value == pytest.approx(lr.pvalue, rel=1e-6)

    def test_f_statistic_identity(self):
        fit = fit_fitts([(1.0, 3.2), (2.0, 4.9), (3.0, 7.3), (4.0, 8.6)])
        want = fit.r_squared * (fit.n - 2) / (1.0 - fit.r_squared)
        assert fit.f_stat == want
        assert fit.df == (1, 2)

    def test_residuals_sum_to_zero(self):
        pairs = [(1.0, 2.7), (1.5, 4.1), (2.2, 4.0), (3.3, 7.7), (4.0, 7.2)]
        fit = fit_fitts(pairs)
        resid = sum(y - (fit.a + fit.b * x) for x, y in pairs)
        assert resid == pytest.approx(0.0, abs=1e-9)

    def test_affine_response_invariance(self):
        pairs = [(1.0, 2.7), (1.5, 4.1), (2.2, 4.0), (3.3, 7.7), (4.0, 7.2)]
        base = fit_fitts(pairs)
        scaled = fit_fitts([(x, 3.0 * y - 1.0) for x, y in pairs])
        assert scaled.b == pytest.approx(3.0 * base.b)
        assert scaled.a == pytest.approx(3.0 * base.a - 1.0)
        assert scaled.r_squared == pytest.approx(base.r_squared)
        assert scaled.p_value == pytest.approx(base.p_value)

    def test_difficulty_shift_moves_only_intercept(self):
        pairs = [(1.0, 2.7), (1.5, 4.1), (2.2, 4.0), (3.3, 7.7), (4.0, 7.2)]
        base = fit_fitts(pairs)
        shifted = fit_fitts([(x + 0.75, y) for x, y in pairs])
        assert shifted.b == pytest.approx(base.b)
        assert shifted.a == pytest.approx(base.a - base.b * 0.75)
        assert shifted.r_squared == pytest.approx(base.r_squared)

    def test_too_few_points_rejected(self):
        with pytest.raises(AnalysisError):
            fit_fitts([(1.0, 2.0), (2.0, 3.0)])

    def test_constant_difficulty_rejected(self):
        with pytest.raises(AnalysisError):
            fit_fitts([(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)])


class TestThroughput:
    def test_single_cell(self):
        assert throughput([[(2.0, 4.0)]]) == pytest.approx(0.5)

    def test_mean_of_means_within_participant(self):
        assert throughput([[(2.0, 4.0), (3.0, 3.0)]]) == pytest.approx(0.75)

    def test_participants_weighted_equally(self):
        grid = [[(2.0, 4.0), (2.0, 4.0)], [(3.0, 3.0), (3.0, 3.0)]]
        assert throughput(grid) == pytest.approx((0.5 + 1.0) / 2.0)

    def test_relabeling_invariance(self):
        rng = random.Random(54)
        grid = [[(rng.uniform(1, 4), rng.uniform(0.5, 3)) for _ in range(6)]
                for _ in range(8)]
        base = throughput(grid)
        shuffled = [list(row) for row in grid]
        rng.shuffle(shuffled)
        for row in shuffled:
            rng.shuffle(row)
        assert throughput(shuffled) == pytest.approx(base, rel=1e-12)

    def test_uniform_time_scaling(self):
        grid = [[(2.0, 1.0), (3.0, 2.0)], [(2.5, 1.5), (1.0, 0.5)]]
        base = throughput(grid)
        scaled = [[(ide, 2.0 * ste) for ide, ste in row] for row in grid]
        assert throughput(scaled) == pytest.approx(base / 2.0)

    def test_rejects_bad_grids(self):
        with pytest.raises(AnalysisError):
            throughput([])
        with pytest.raises(AnalysisError):
            throughput([[]])
        with pytest.raises(AnalysisError):
            throughput([[(2.0, 1.0)], [(2.0, 1.0), (3.0, 1.0)]])
        with pytest.raises(AnalysisError):
            throughput([[(2.0, 0.0)]])


class TestErrorAndExclusion:
    def test_error_rate_counts_trials_not_clicks(self):
        target = (522.0, 400.0)
        ok = rec((400.0, 400.0), (522.0, 400.0), target)
        bad = rec((400.0, 400.0), (522.0, 400.0), target,
                  misclicks=((0.0, 0.0, 10.0), (1.0, 1.0, 20.0),
                             (2.0, 2.0, 30.0)))
        assert error_rate([ok, bad]) == pytest.approx(50.0)
        assert error_rate([ok, ok, ok, bad]) == pytest.approx(25.0)

    def test_error_rate_needs_trials(self):
        with pytest.raises(AnalysisError):
            error_rate([])

    def test_exclusion_drops_strictly_slower(self):
        target = (522.0, 400.0)
        trials = [rec((400.0, 400.0), (522.0, 400.0), target, st_s=s)
                  for s in (10.0, 24.9, 26.0)]
        kept, pct = exclusion_filter(trials, 25.0)
        assert [t.selection_time_s for t in kept] == [10.0, 24.9]
        assert pct == pytest.approx(100.0 / 3.0)

    def test_exact_boundary_is_kept(self):
        target = (522.0, 400.0)
        trials = [rec((400.0, 400.0), (522.0, 400.0), target, st_s=25.0)]
        kept, pct = exclusion_filter(trials, 25.0)
        assert len(kept) == 1
        assert pct == 0.0

    def test_empty_input_passes_through(self):
        kept, pct = exclusion_filter([], 25.0)
        assert kept == []
        assert pct == 0.0
