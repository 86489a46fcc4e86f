"""Threshold state machine: filtered sensor frames to control events.

Velocity-mode mapping: a tilt held past its threshold produces constant
rate cursor motion, so the profile speed is a hard bound on per-event
magnitude. Thresholds compare against the *filtered* channel values, with
strict inequalities (a value exactly at a threshold does not trigger).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .events import (ClickPress, ClickRelease, ControlEvent, Mode, ModeToggle,
                     PointerDelta, ZDelta)
from .filters import OneEuroFilter
from .frames import SensorFrame
from .profile import CalibrationProfile

_SQRT_HALF = math.sqrt(0.5)

CHANNELS = ("ax", "ay", "az", "stretch")


class UncalibratedError(RuntimeError):
    """Translator built without a valid calibration profile."""


@dataclass(frozen=True)
class FilteredFrame:
    """Per-channel smoothed values for one frame."""

    t_ms: float
    ax: float
    ay: float
    az: float
    stretch: float
    button: bool


class Translator:
    """Single-owner event translator for one sensor stream.

    The push button toggles between the session's active mode and
    Released, in which no motion or click events are produced. Profiles
    are immutable; `set_profile` queues a replacement that takes effect
    at the next frame boundary.
    """

    def __init__(self, profile: CalibrationProfile,
                 active_mode: Mode = Mode.POINTING):
        if active_mode is Mode.RELEASED:
            raise ValueError("active_mode must be POINTING or ARM3D")
        try:
            profile.validate()
        except Exception as exc:
            raise UncalibratedError(str(exc)) from exc
        self.profile = profile
        self.active_mode = active_mode
        self.mode = active_mode
        self.click_down = False
        self.z_up = False
        self.z_down = False
        self.dropped_frames = 0
        self.last_filtered: FilteredFrame | None = None
        self._filters = {ch: OneEuroFilter(profile.filter_min_cutoff,
                                           profile.filter_beta)
                         for ch in CHANNELS}
        self._pending_profile: CalibrationProfile | None = None
        self._last_t_ms: float | None = None
        self._button_prev = False
        self._last_toggle_t: float | None = None

    def set_profile(self, profile: CalibrationProfile) -> None:
        """Queue a validated profile; it takes effect at the next frame."""
        profile.validate()
        self._pending_profile = profile

    def smooth(self, frame: SensorFrame) -> FilteredFrame | None:
        """Filter one frame; returns None when it is dropped.

        Frames with timestamps earlier than the previous accepted frame
        are dropped and counted in `dropped_frames`.
        """
        t_ms = float(frame.t_ms)
        if self._last_t_ms is not None and t_ms < self._last_t_ms:
            self.dropped_frames += 1
            return None
        self._last_t_ms = t_ms
        t_s = t_ms / 1000.0
        f = self._filters
        filtered = FilteredFrame(
            t_ms,
            f["ax"](t_s, float(frame.ax)),
            f["ay"](t_s, float(frame.ay)),
            f["az"](t_s, float(frame.az)),
            f["stretch"](t_s, float(frame.stretch)),
            frame.button,
        )
        self.last_filtered = filtered
        return filtered

    def translate(self, filtered: FilteredFrame, dt: float) -> list[ControlEvent]:
        """Advance the threshold state machine by one filtered frame."""
        t_ms = filtered.t_ms
        p = self.profile
        events: list[ControlEvent] = []

        rising = filtered.button and not self._button_prev
        self._button_prev = filtered.button
        if rising and (self._last_toggle_t is None
                       or t_ms - self._last_toggle_t >= p.debounce_ms):
            self._last_toggle_t = t_ms
            events.append(ModeToggle(t_ms))
            if self.mode is Mode.RELEASED:
                self.mode = self.active_mode
            else:
                self.mode = Mode.RELEASED
                if self.click_down:
                    # Never leave a dangling press behind when control is
                    # handed back.
                    self.click_down = False
                    events.append(ClickRelease(t_ms))
                self.z_up = False
                self.z_down = False

        if self.mode is Mode.RELEASED:
            return events

        sx = 1 if filtered.ax > p.tilt_pos_x else (
            -1 if filtered.ax < p.tilt_neg_x else 0)
        sy = 1 if filtered.ay > p.tilt_pos_y else (
            -1 if filtered.ay < p.tilt_neg_y else 0)
        if (sx or sy) and dt > 0:
            step = p.speed_xy * dt
            if sx and sy:
                # Scale diagonals so the vector magnitude stays within
                # speed_xy*dt.
                step *= _SQRT_HALF
            events.append(PointerDelta(t_ms, sx * step, sy * step))

        s = filtered.stretch
        if self.mode is Mode.POINTING:
            if not self.click_down and s > p.stretch_press:
                self.click_down = True
                events.append(ClickPress(t_ms))
            elif self.click_down and s < p.stretch_release:
                self.click_down = False
                events.append(ClickRelease(t_ms))
        else:
            # Arm3D: the stretch press band gates +Z, the low band -Z.
            if not self.z_up and s > p.stretch_press:
                self.z_up = True
            elif self.z_up and s < p.stretch_release:
                self.z_up = False
            if not self.z_down and s < p.stretch_press_down:
                self.z_down = True
            elif self.z_down and s > p.stretch_release_down:
                self.z_down = False
            if dt > 0:
                if self.z_up:
                    events.append(ZDelta(t_ms, p.speed_z * dt))
                elif self.z_down:
                    events.append(ZDelta(t_ms, -p.speed_z * dt))

        return events

    def feed(self, frame: SensorFrame) -> list[ControlEvent]:
        """Smooth + translate one raw frame; returns emitted events."""
        if self._pending_profile is not None:
            new = self._pending_profile
            self._pending_profile = None
            changed_filter = (
                new.filter_min_cutoff != self.profile.filter_min_cutoff
                or new.filter_beta != self.profile.filter_beta)
            self.profile = new
            if changed_filter:
                # Re-parameterize in place, keeping filter memory.
                for f in self._filters.values():
                    f.min_cutoff = new.filter_min_cutoff
                    f.beta = new.filter_beta

        prev_t = self._last_t_ms
        filtered = self.smooth(frame)
        if filtered is None:
            return []
        dt = 0.0 if prev_t is None else (filtered.t_ms - prev_t) / 1000.0
        return self.translate(filtered, dt)


def translate_stream(frames: Iterable[SensorFrame],
                     profile: CalibrationProfile,
                     active_mode: Mode = Mode.POINTING,
                     ) -> Iterator[ControlEvent]:
    """ControlEvents from an iterable of SensorFrames."""
    translator = Translator(profile, active_mode)
    for frame in frames:
        yield from translator.feed(frame)
