"""Reach-and-click task: alternating peripheral and center selections.

The state machine is event-driven and fully deterministic: a given seed
fixes the target schedule, and a given ControlEvent tape fixes every
trial record, so replaying a logged tape reproduces the log exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..events import ClickPress, ClickRelease, ControlEvent, PointerDelta
from .targets import SCREEN_SIZE, TargetSpec2D, peripheral_targets_2d


class TaskError(RuntimeError):
    """Event fed outside an active session."""


@dataclass(frozen=True)
class TrialPlan:
    """One scheduled reach with its analysis condition."""

    target: TargetSpec2D
    width: float
    distance: float  # condition distance; a center reach inherits its
                     # preceding peripheral distance


@dataclass(frozen=True)
class TrialRecord2D:
    trial_index: int
    run_index: int
    target: TargetSpec2D
    target_pos: tuple[float, float]
    width: float
    distance: float
    start_pos: tuple[float, float]
    end_pos: tuple[float, float]
    onset_t: float
    success_click_t: float
    misclicks: tuple[tuple[float, float, float], ...]  # (x, y, t_ms)
    path: tuple[tuple[float, float], ...]

    @property
    def selection_time_s(self) -> float:
        return (self.success_click_t - self.onset_t) / 1000.0

    def to_dict(self) -> dict:
        return {
            "kind": "trial2d",
            "trial": self.trial_index,
            "run": self.run_index,
            "target": {"angle_deg": self.target.angle_deg,
                       "width": self.target.width,
                       "distance": self.target.distance,
                       "is_center": self.target.is_center},
            "target_pos": list(self.target_pos),
            "width": self.width,
            "distance": self.distance,
            "start_pos": list(self.start_pos),
            "end_pos": list(self.end_pos),
            "onset_t": self.onset_t,
            "success_click_t": self.success_click_t,
            "misclicks": [list(m) for m in self.misclicks],
            "path": [list(p) for p in self.path],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialRecord2D":
        t = d["target"]
        return cls(
            trial_index=d["trial"],
            run_index=d["run"],
            target=TargetSpec2D(t["angle_deg"], t["width"], t["distance"],
                                t["is_center"]),
            target_pos=tuple(d["target_pos"]),
            width=d["width"],
            distance=d["distance"],
            start_pos=tuple(d["start_pos"]),
            end_pos=tuple(d["end_pos"]),
            onset_t=d["onset_t"],
            success_click_t=d["success_click_t"],
            misclicks=tuple(tuple(m) for m in d["misclicks"]),
            path=tuple(tuple(p) for p in d["path"]),
        )


@dataclass(frozen=True)
class PointingView:
    """What an operator (or agent) can see of the current trial."""

    trial_index: int
    run_index: int
    target_pos: tuple[float, float]
    width: float
    distance: float
    is_center: bool
    pointer: tuple[float, float]
    onset_t: float
    halted: bool


def build_schedule(seed: int, runs: int = 2, trials_per_run: int = 50,
                   ) -> list[TrialPlan]:
    """Alternating peripheral/center reaches, peripherals drawn without
    replacement within each run."""
    if trials_per_run % 2:
        raise ValueError("trials_per_run must be even (reach out, reach back)")
    peripherals = peripheral_targets_2d()
    per_run = trials_per_run // 2
    if per_run > len(peripherals):
        raise ValueError("run longer than the peripheral target set allows")
    rng = np.random.default_rng(seed)
    plans: list[TrialPlan] = []
    for _ in range(runs):
        order = rng.permutation(len(peripherals))[:per_run]
        for idx in order:
            spec = peripherals[int(idx)]
            plans.append(TrialPlan(spec, spec.width, spec.distance))
            center = TargetSpec2D(0.0, spec.width, 0.0, is_center=True)
            plans.append(TrialPlan(center, spec.width, spec.distance))
    return plans


class PointingTask:
    """Event-driven 2D reach-and-click session."""

    def __init__(self, seed: int = 0, screen_size: float = SCREEN_SIZE,
                 runs: int = 2, trials_per_run: int = 50,
                 path_stride: int = 10):
        if path_stride < 1:
            raise ValueError("path_stride must be >= 1")
        self.screen_size = float(screen_size)
        self.runs = runs
        self.trials_per_run = trials_per_run
        self.path_stride = path_stride
        self.schedule = build_schedule(seed, runs, trials_per_run)
        self.records: list[TrialRecord2D] = []
        self.pointer = (self.screen_size / 2.0, self.screen_size / 2.0)
        self.halted = False
        self.started = False
        self.trial_index = 0
        self._onset_t = 0.0
        self._start_pos = self.pointer
        self._misclicks: list[tuple[float, float, float]] = []
        self._path: list[tuple[float, float]] = []
        self._moves = 0

    @property
    def done(self) -> bool:
        return self.started and self.trial_index >= len(self.schedule)

    @property
    def run_index(self) -> int:
        return min(self.trial_index, len(self.schedule) - 1) // self.trials_per_run

    def start(self, t_ms: float = 0.0) -> None:
        if self.started:
            raise TaskError("session already started")
        self.started = True
        self._begin_trial(t_ms)

    def _begin_trial(self, t_ms: float) -> None:
        self._onset_t = t_ms
        self._start_pos = self.pointer
        self._misclicks = []
        self._path = [self.pointer]
        self._moves = 0
        self.halted = False

    def view(self) -> PointingView:
        if not self.started or self.done:
            raise TaskError("no active trial")
        plan = self.schedule[self.trial_index]
        return PointingView(
            trial_index=self.trial_index,
            run_index=self.run_index,
            target_pos=plan.target.position(self.screen_size),
            width=plan.width,
            distance=plan.distance,
            is_center=plan.target.is_center,
            pointer=self.pointer,
            onset_t=self._onset_t,
            halted=self.halted,
        )

    def step(self, event: ControlEvent) -> TrialRecord2D | None:
        """Consume one event; returns a record when a trial completes."""
        if not self.started:
            raise TaskError("event before session start")
        if self.done:
            return None

        if isinstance(event, PointerDelta):
            if not self.halted:
                x = self.pointer[0] + event.dx
                y = self.pointer[1] + event.dy
                x = 0.0 if x < 0.0 else (self.screen_size if x > self.screen_size else x)
                y = 0.0 if y < 0.0 else (self.screen_size if y > self.screen_size else y)
                self.pointer = (x, y)
                self._moves += 1
                if self._moves % self.path_stride == 0:
                    self._path.append(self.pointer)
            return None

        if isinstance(event, ClickRelease):
            self.halted = False
            return None

        if isinstance(event, ClickPress):
            plan = self.schedule[self.trial_index]
            tx, ty = plan.target.position(self.screen_size)
            dx = self.pointer[0] - tx
            dy = self.pointer[1] - ty
            if math.hypot(dx, dy) < plan.width / 2.0:
                record = TrialRecord2D(
                    trial_index=self.trial_index,
                    run_index=self.trial_index // self.trials_per_run,
                    target=plan.target,
                    target_pos=(tx, ty),
                    width=plan.width,
                    distance=plan.distance,
                    start_pos=self._start_pos,
                    end_pos=self.pointer,
                    onset_t=self._onset_t,
                    success_click_t=float(event.t_ms),
                    misclicks=tuple(self._misclicks),
                    path=tuple(self._path) + (self.pointer,),
                )
                self.records.append(record)
                self.trial_index += 1
                if not self.done:
                    self._begin_trial(float(event.t_ms))
                return record
            # A miss halts the pointer until release; the trial clock
            # keeps running.
            self._misclicks.append((self.pointer[0], self.pointer[1],
                                    float(event.t_ms)))
            self.halted = True
            return None

        return None  # mode toggles and Z motion mean nothing here
