"""Translator state machine tests.

Threshold behaviour is hand-traced against the profile contract: strict
inequalities, hysteresis bands, debounced mode toggling and velocity
bounds. Tests drive `translate` directly with pre-filtered values where
exact thresholds matter, and `feed` for the integrated path.
"""

import math
import random

import pytest

from chinpoint.events import (ClickPress, ClickRelease, Mode, ModeToggle,
                              PointerDelta, ZDelta)
from chinpoint.frames import SensorFrame
from chinpoint.profile import CalibrationProfile
from chinpoint.translator import (FilteredFrame, Translator,
                                  UncalibratedError, translate_stream)

PROFILE = CalibrationProfile()


def ff(t_ms, ax=0.0, ay=0.0, az=0.0, stretch=300.0, button=False):
    return FilteredFrame(t_ms, ax, ay, az, stretch, button)


class TestConstruction:
    def test_released_start_mode_rejected(self):
        with pytest.raises(ValueError):
            Translator(PROFILE, active_mode=Mode.RELEASED)

    def test_invalid_profile_rejected(self):
        bad = CalibrationProfile(stretch_press=400.0, stretch_release=450.0)
        with pytest.raises(UncalibratedError):
            Translator(bad)


class TestSmoothing:
    def test_out_of_order_frames_dropped(self):
        tr = Translator(PROFILE)
        tr.smooth(SensorFrame(0, 100, 0, 0, 0, 300, False))
        assert tr.smooth(SensorFrame(1, 50, 0, 0, 0, 300, False)) is None
        assert tr.dropped_frames == 1
        assert tr.smooth(SensorFrame(2, 100, 0, 0, 0, 300, False)) is not None

    def test_filter_starts_at_first_value(self):
        tr = Translator(PROFILE)
        out = tr.smooth(SensorFrame(0, 10, 120, -40, 7, 512, True))
        assert (out.ax, out.ay, out.az, out.stretch) == (120.0, -40.0, 7.0,
                                                         512.0)
        assert out.button is True

    def test_smoothing_lags_raw_step(self):
        tr = Translator(PROFILE)
        tr.smooth(SensorFrame(0, 10, 0, 0, 0, 300, False))
        out = tr.smooth(SensorFrame(1, 20, 1000, 0, 0, 300, False))
        assert 0.0 < out.ax < 1000.0


class TestPointerMotion:
    def test_dead_band_produces_nothing(self):
        tr = Translator(PROFILE)
        for ax in (0.0, 150.0, -199.0, 199.9):
            assert tr.translate(ff(10, ax=ax), 0.01) == []

    def test_threshold_is_strict(self):
        tr = Translator(PROFILE)
        assert tr.translate(ff(10, ax=200.0), 0.01) == []
        assert tr.translate(ff(20, ay=-200.0), 0.01) == []

    def test_single_axis_step_is_speed_times_dt(self):
        tr = Translator(PROFILE)
        (ev,) = tr.translate(ff(10, ax=300.0), 0.02)
        assert ev == PointerDelta(10, PROFILE.speed_xy * 0.02, 0.0)
        (ev,) = tr.translate(ff(20, ay=-300.0), 0.01)
        assert ev == PointerDelta(20, 0.0, -PROFILE.speed_xy * 0.01)

    def test_diagonal_is_scaled_to_bound(self):
        tr = Translator(PROFILE)
        (ev,) = tr.translate(ff(10, ax=300.0, ay=-300.0), 0.01)
        step = PROFILE.speed_xy * 0.01 * math.sqrt(0.5)
        assert ev.dx == pytest.approx(step)
        assert ev.dy == pytest.approx(-step)
        assert math.hypot(ev.dx, ev.dy) == pytest.approx(PROFILE.speed_xy
                                                         * 0.01)

    def test_zero_dt_suppresses_motion(self):
        tr = Translator(PROFILE)
        assert tr.translate(ff(10, ax=500.0), 0.0) == []

    def test_magnitude_never_exceeds_speed_bound(self):
        rng = random.Random(21)
        tr = Translator(PROFILE)
        t = 0.0
        for _ in range(500):
            t += 10.0
            dt = rng.uniform(0.001, 0.05)
            frame = ff(t, ax=rng.uniform(-800, 800),
                       ay=rng.uniform(-800, 800),
                       stretch=rng.uniform(0, 440))
            for ev in tr.translate(frame, dt):
                assert isinstance(ev, PointerDelta)
                assert math.hypot(ev.dx, ev.dy) <= PROFILE.speed_xy * dt + 1e-9


class TestClickHysteresis:
    def test_press_hold_release_trace(self):
        tr = Translator(PROFILE)
        assert tr.translate(ff(10, stretch=300.0), 0.01) == []
        assert tr.translate(ff(20, stretch=800.0), 0.01) == [ClickPress(20)]
        # inside the band: held, no event either way
        assert tr.translate(ff(30, stretch=500.0), 0.01) == []
        assert tr.translate(ff(40, stretch=300.0), 0.01) == [ClickRelease(40)]

    def test_band_edges_are_strict(self):
        tr = Translator(PROFILE)
        assert tr.translate(ff(10, stretch=600.0), 0.01) == []
        tr.translate(ff(20, stretch=601.0), 0.01)
        assert tr.click_down
        assert tr.translate(ff(30, stretch=450.0), 0.01) == []
        assert tr.click_down

    def test_repress_requires_recrossing(self):
        tr = Translator(PROFILE)
        tr.translate(ff(10, stretch=700.0), 0.01)
        tr.translate(ff(20, stretch=100.0), 0.01)
        assert tr.translate(ff(30, stretch=500.0), 0.01) == []
        assert tr.translate(ff(40, stretch=700.0), 0.01) == [ClickPress(40)]

    def test_no_repeat_press_while_held(self):
        tr = Translator(PROFILE)
        tr.translate(ff(10, stretch=800.0), 0.01)
        for t in (20, 30, 40):
            assert tr.translate(ff(t, stretch=800.0), 0.01) == []


class TestModeToggle:
    def test_toggle_releases_and_suppresses_output(self):
        tr = Translator(PROFILE)
        events = tr.translate(ff(10, ax=500.0, button=True), 0.01)
        assert events == [ModeToggle(10)]
        assert tr.mode is Mode.RELEASED
        # held high tilt and stretch produce nothing while released
        assert tr.translate(ff(20, ax=500.0, stretch=800.0), 0.01) == []

    def test_held_button_is_one_edge(self):
        tr = Translator(PROFILE)
        tr.translate(ff(10, button=True), 0.01)
        assert tr.translate(ff(20, button=True), 0.01) == []
        assert tr.mode is Mode.RELEASED

    def test_debounce_window_suppresses_second_edge(self):
        tr = Translator(PROFILE)
        tr.translate(ff(0, button=True), 0.01)
        tr.translate(ff(10, button=False), 0.01)
        assert tr.translate(ff(50, button=True), 0.01) == []
        assert tr.mode is Mode.RELEASED
        tr.translate(ff(60, button=False), 0.01)
        assert tr.translate(ff(250, button=True), 0.01) == [ModeToggle(250)]
        assert tr.mode is Mode.POINTING

    def test_release_to_idle_forces_click_release(self):
        tr = Translator(PROFILE)
        tr.translate(ff(10, stretch=800.0), 0.01)
        assert tr.click_down
        events = tr.translate(ff(20, stretch=800.0, button=True), 0.01)
        assert events == [ModeToggle(20), ClickRelease(20)]
        assert not tr.click_down

    def test_toggle_clears_z_gates(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        tr.translate(ff(10, stretch=800.0), 0.01)
        assert tr.z_up
        tr.translate(ff(20, stretch=800.0, button=True), 0.01)
        assert not tr.z_up and not tr.z_down
        tr.translate(ff(30, stretch=800.0, button=False), 0.01)
        # back to active: the toggling frame itself runs under the restored
        # mode, so the held stretch re-arms +Z immediately
        events = tr.translate(ff(250, stretch=800.0, button=True), 0.01)
        assert events == [ModeToggle(250), ZDelta(250, PROFILE.speed_z * 0.01)]
        assert tr.mode is Mode.ARM3D

    def test_toggle_returns_to_arm_mode_not_pointing(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        tr.translate(ff(10, button=True), 0.01)
        tr.translate(ff(20, button=False), 0.01)
        tr.translate(ff(300, button=True), 0.01)
        assert tr.mode is Mode.ARM3D


class TestArm3D:
    def test_stretch_band_drives_plus_z(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        assert tr.translate(ff(10, stretch=700.0), 0.02) == [
            ZDelta(10, PROFILE.speed_z * 0.02)]
        # stays up inside the hysteresis band
        assert tr.translate(ff(20, stretch=500.0), 0.01) == [
            ZDelta(20, PROFILE.speed_z * 0.01)]
        assert tr.translate(ff(30, stretch=300.0), 0.01) == []

    def test_slack_band_drives_minus_z(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        assert tr.translate(ff(10, stretch=100.0), 0.01) == [
            ZDelta(10, -PROFILE.speed_z * 0.01)]
        # still slack inside the band
        assert tr.translate(ff(20, stretch=200.0), 0.01) == [
            ZDelta(20, -PROFILE.speed_z * 0.01)]
        assert tr.translate(ff(30, stretch=300.0), 0.01) == []

    def test_no_click_events_in_arm_mode(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        for t, s in ((10, 800.0), (20, 100.0), (30, 800.0)):
            for ev in tr.translate(ff(t, stretch=s), 0.01):
                assert isinstance(ev, ZDelta)

    def test_tilt_still_moves_in_arm_mode(self):
        tr = Translator(PROFILE, active_mode=Mode.ARM3D)
        events = tr.translate(ff(10, ax=400.0, stretch=700.0), 0.01)
        kinds = [type(e) for e in events]
        assert kinds == [PointerDelta, ZDelta]


class TestFeed:
    def test_first_frame_has_no_motion(self):
        tr = Translator(PROFILE)
        assert tr.feed(SensorFrame(0, 10, 800, 0, 0, 300, False)) == []

    def test_steady_tilt_accumulates_distance(self):
        # saturating tilt at 100 Hz: each frame after the first moves
        # speed_xy * 0.01 px
        tr = Translator(PROFILE)
        moved = 0.0
        for i in range(50):
            for ev in tr.feed(SensorFrame(i, (i + 1) * 10, 32000, 0, 0, 300,
                                          False)):
                moved += ev.dx
        assert moved == pytest.approx(49 * PROFILE.speed_xy * 0.01, rel=1e-3)

    def test_profile_swap_applies_at_next_frame(self):
        tr = Translator(PROFILE)
        tr.feed(SensorFrame(0, 10, 0, 0, 0, 300, False))
        tr.set_profile(PROFILE.merged({"speed_xy": 100.0}))
        (ev,) = tr.feed(SensorFrame(1, 20, 32000, 0, 0, 300, False))
        assert ev.dx == pytest.approx(100.0 * 0.01)

    def test_set_profile_validates_immediately(self):
        tr = Translator(PROFILE)
        with pytest.raises(Exception):
            tr.set_profile(CalibrationProfile(speed_xy=-1.0))

    def test_swap_preserves_filter_memory(self):
        # changing only thresholds must not reset smoothing state
        a = Translator(PROFILE)
        b = Translator(PROFILE)
        for i in range(20):
            frame = SensorFrame(i, (i + 1) * 10, 5000, 0, 0, 300, False)
            a.feed(frame)
            b.feed(frame)
        b.set_profile(PROFILE.merged({"tilt_pos_x": 210.0}))
        frame = SensorFrame(20, 210, 5000, 0, 0, 300, False)
        (ea,) = a.feed(frame)
        (eb,) = b.feed(frame)
        assert ea == eb
        assert a.last_filtered == b.last_filtered

    def test_translate_stream_matches_manual_feed(self):
        rng = random.Random(22)
        frames = [SensorFrame(i, (i + 1) * 10, rng.randint(-900, 900),
                              rng.randint(-900, 900), 0, rng.randint(0, 1000),
                              rng.random() < 0.05)
                  for i in range(200)]
        tr = Translator(PROFILE)
        manual = [ev for f in frames for ev in tr.feed(f)]
        assert list(translate_stream(frames, PROFILE)) == manual
