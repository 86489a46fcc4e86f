"""Reach-and-hold task: drive a 3D endpoint to a sphere, dwell, return.

Dwell completion is timestamped at entry + dwell_ms exactly, and the
check runs before an event's movement is applied. Because the endpoint
is piecewise constant between events, trial records are identical no
matter how often idle ticks arrive; ticks only bound detection latency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..events import ControlEvent, PointerDelta, ZDelta
from .pointing import TaskError
from .targets import (CUBE_SIDE, TargetSpec3D, generate_target_set_3d,
                      start_sphere_3d)

DWELL_MS = 1000.0
XY_GAIN_M_PER_PX = 1.0 / 500.0


@dataclass(frozen=True)
class TrialRecord3D:
    trial_index: int
    practice: bool
    target: TargetSpec3D
    onset_t: float
    outbound_complete_t: float
    return_complete_t: float
    transitions: tuple[tuple[str, str, float], ...]  # (sphere, enter/leave, t)

    @property
    def completion_time_s(self) -> float:
        return (self.return_complete_t - self.onset_t) / 1000.0

    def to_dict(self) -> dict:
        return {
            "kind": "trial3d",
            "trial": self.trial_index,
            "practice": self.practice,
            "target": {"center": list(self.target.center),
                       "radius": self.target.radius},
            "onset_t": self.onset_t,
            "outbound_complete_t": self.outbound_complete_t,
            "return_complete_t": self.return_complete_t,
            "transitions": [list(tr) for tr in self.transitions],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialRecord3D":
        t = d["target"]
        return cls(
            trial_index=d["trial"],
            practice=d["practice"],
            target=TargetSpec3D(tuple(t["center"]), t["radius"]),
            onset_t=d["onset_t"],
            outbound_complete_t=d["outbound_complete_t"],
            return_complete_t=d["return_complete_t"],
            transitions=tuple((tr[0], tr[1], tr[2]) for tr in d["transitions"]),
        )


@dataclass(frozen=True)
class ArmView:
    trial_index: int
    phase: str  # "out" | "back"
    endpoint: tuple[float, float, float]
    target: TargetSpec3D
    start: TargetSpec3D
    onset_t: float
    inside_since: float | None


def build_schedule_3d(seed: int, trials: int = 20) -> list[TargetSpec3D]:
    """Draw targets without replacement, reshuffling when the set runs out."""
    targets = generate_target_set_3d()
    rng = np.random.default_rng(seed)
    plans: list[TargetSpec3D] = []
    while len(plans) < trials:
        for idx in rng.permutation(len(targets)):
            plans.append(targets[int(idx)])
            if len(plans) == trials:
                break
    return plans


class ArmTask:
    """Event-driven 3D reach-and-hold session."""

    def __init__(self, seed: int = 0, trials: int = 20,
                 gain_m_per_px: float = XY_GAIN_M_PER_PX,
                 dwell_ms: float = DWELL_MS):
        self.trials = trials
        self.gain = float(gain_m_per_px)
        self.dwell_ms = float(dwell_ms)
        self.schedule = build_schedule_3d(seed, trials)
        self.start_sphere = start_sphere_3d()
        self.records: list[TrialRecord3D] = []
        self.endpoint = self.start_sphere.center
        self.phase = "out"
        self.started = False
        self.trial_index = 0
        self._onset_t = 0.0
        self._inside = False
        self._entry_t: float | None = None
        self._outbound_complete_t: float | None = None
        self._transitions: list[tuple[str, str, float]] = []

    @property
    def done(self) -> bool:
        return self.started and self.trial_index >= self.trials

    def start(self, t_ms: float = 0.0) -> None:
        if self.started:
            raise TaskError("session already started")
        self.started = True
        self._begin_trial(t_ms)

    def _begin_trial(self, t_ms: float) -> None:
        self._onset_t = t_ms
        self.phase = "out"
        self._inside = False
        self._entry_t = None
        self._outbound_complete_t = None
        self._transitions = []

    def _active_sphere(self) -> TargetSpec3D:
        if self.phase == "out":
            return self.schedule[self.trial_index]
        return self.start_sphere

    def view(self) -> ArmView:
        if not self.started or self.done:
            raise TaskError("no active trial")
        return ArmView(
            trial_index=self.trial_index,
            phase=self.phase,
            endpoint=self.endpoint,
            target=self.schedule[self.trial_index],
            start=self.start_sphere,
            onset_t=self._onset_t,
            inside_since=self._entry_t,
        )

    def dwell_progress(self, t_ms: float) -> float:
        if not self._inside or self._entry_t is None:
            return 0.0
        frac = (t_ms - self._entry_t) / self.dwell_ms
        return 0.0 if frac < 0.0 else (1.0 if frac > 1.0 else frac)

    def _check_dwell(self, t_ms: float) -> TrialRecord3D | None:
        """Complete a dwell whose deadline has passed; at most one fires."""
        if not self._inside or self._entry_t is None:
            return None
        deadline = self._entry_t + self.dwell_ms
        if t_ms < deadline:
            return None
        if self.phase == "out":
            self._outbound_complete_t = deadline
            self.phase = "back"
            self._inside = False
            self._entry_t = None
            return None
        record = TrialRecord3D(
            trial_index=self.trial_index,
            practice=self.trial_index == 0,
            target=self.schedule[self.trial_index],
            onset_t=self._onset_t,
            outbound_complete_t=self._outbound_complete_t,
            return_complete_t=deadline,
            transitions=tuple(self._transitions),
        )
        self.records.append(record)
        self.trial_index += 1
        if not self.done:
            self._begin_trial(deadline)
        return record

    def tick(self, t_ms: float) -> TrialRecord3D | None:
        """Advance the dwell clock without moving the endpoint."""
        if not self.started:
            raise TaskError("tick before session start")
        if self.done:
            return None
        return self._check_dwell(float(t_ms))

    def finish(self, t_ms: float) -> TrialRecord3D | None:
        """Final dwell check at end of stream."""
        return self.tick(t_ms)

    def step(self, event: ControlEvent) -> TrialRecord3D | None:
        """Consume one event; returns a record when a trial completes."""
        if not self.started:
            raise TaskError("event before session start")
        if self.done:
            return None
        t_ms = float(event.t_ms)
        record = self._check_dwell(t_ms)
        if self.done:
            return record

        x, y, z = self.endpoint
        if isinstance(event, PointerDelta):
            x += event.dx * self.gain
            y += event.dy * self.gain
        elif isinstance(event, ZDelta):
            z += event.dz
        x = 0.0 if x < 0.0 else (CUBE_SIDE if x > CUBE_SIDE else x)
        y = 0.0 if y < 0.0 else (CUBE_SIDE if y > CUBE_SIDE else y)
        z = 0.0 if z < 0.0 else (CUBE_SIDE if z > CUBE_SIDE else z)
        self.endpoint = (x, y, z)

        sphere = self._active_sphere()
        label = "target" if self.phase == "out" else "start"
        inside_now = sphere.contains(self.endpoint)
        if inside_now and not self._inside:
            self._inside = True
            self._entry_t = t_ms
            self._transitions.append((label, "enter", t_ms))
        elif not inside_now and self._inside:
            self._inside = False
            self._entry_t = None
            self._transitions.append((label, "leave", t_ms))
        return record


def mean_completion_time(records: list[TrialRecord3D],
                         expected_trials: int = 20) -> float:
    """Mean completion over all trials after the practice trial."""
    if len(records) < expected_trials:
        raise TaskError(
            f"incomplete session: {len(records)} of {expected_trials} trials")
    scored = [r.completion_time_s for r in records[:expected_trials]
              if not r.practice]
    return float(np.mean(scored))
