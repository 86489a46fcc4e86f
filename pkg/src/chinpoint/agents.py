"""Synthetic operators with known ground truth.

The pointing agent plans each reach so that, after the task's own rules
are applied (miss clicks, corrective clicks), the recovered quantities
match its parameters: selection times follow
a_true + b_true * log2(D/W + 1), and the radial endpoint spread per
condition converges to endpoint_sigma_ratio * width. Scatter is sampled untruncated; an attempt
that lands outside the target becomes a miss click followed by a
corrective click at the target center, and the per-axis sigma is solved
numerically so the post-correction radial spread still hits the
configured ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .events import ClickPress, ClickRelease, ControlEvent, PointerDelta, ZDelta
from .tasks.arm import ArmTask, ArmView, TrialRecord3D
from .tasks.pointing import PointingTask, PointingView, TrialRecord2D

CLICK_HOLD_MS = 40.0
CORRECTION_MOVE_MS = 100.0
CORRECTION_CLICK_MS = 150.0
MOVE_STEPS = 8


class AgentError(ValueError):
    """Agent parameters out of range or unattainable."""


@dataclass(frozen=True)
class AgentParams:
    a_true: float = 0.5
    b_true: float = 2.0
    endpoint_sigma_ratio: float = 0.12
    misclick_rate: float = 0.0
    seed: int = 0
    time_noise_frac: float = 0.05
    lapse_rate_per_bit: float = 0.0
    lapse_mean_s: float = 0.0

    def validate(self) -> None:
        if self.b_true <= 0:
            raise AgentError("b_true must be > 0")
        if self.endpoint_sigma_ratio <= 0:
            raise AgentError("endpoint_sigma_ratio must be > 0")
        if not 0.0 <= self.misclick_rate < 1.0:
            raise AgentError("misclick_rate must be in [0, 1)")
        if self.time_noise_frac < 0:
            raise AgentError("time_noise_frac must be >= 0")
        if self.lapse_rate_per_bit < 0 or self.lapse_mean_s < 0:
            raise AgentError("lapse parameters must be >= 0")


def _corrected_radial_std(sigma_axis: float, half_width: float) -> float:
    """Radial spread of success endpoints under the correction rule.

    Per-axis Gaussian scatter makes the miss distance Rayleigh; samples
    beyond the target edge are replaced by w = 0 (corrective click at the
    center).
    """
    c = half_width
    s2 = sigma_axis * sigma_axis
    q = math.exp(-c * c / (2.0 * s2))
    m1 = (sigma_axis * math.sqrt(math.pi / 2.0)
          * math.erf(c / (sigma_axis * math.sqrt(2.0))) - c * q)
    m2 = 2.0 * s2 * (1.0 - q * (1.0 + c * c / (2.0 * s2)))
    var = m2 - m1 * m1
    return math.sqrt(var) if var > 0 else 0.0


def solve_axis_sigma(sigma_ratio: float, width: float) -> float:
    """Per-axis sigma whose corrected radial spread is sigma_ratio*width.

    The corrected spread rises with sigma only up to a ceiling (heavier
    scatter just means more center clicks); ratios beyond that ceiling
    are rejected.
    """
    target = sigma_ratio * width
    c = width / 2.0
    lo, hi = 1e-6 * width, 0.35 * width
    if _corrected_radial_std(hi, c) < target:
        raise AgentError(
            f"endpoint_sigma_ratio {sigma_ratio} exceeds what the correction "
            "rule can express for this target geometry")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _corrected_radial_std(mid, c) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class PointingAgent:
    """Open-loop tape generator for one participant's pointing session."""

    def __init__(self, params: AgentParams,
                 rng: np.random.Generator | None = None):
        params.validate()
        self.params = params
        self.rng = rng if rng is not None else np.random.default_rng(params.seed)
        self._clock = 0.0
        self._sigma_cache: dict[float, float] = {}

    def _axis_sigma(self, width: float) -> float:
        if width not in self._sigma_cache:
            self._sigma_cache[width] = solve_axis_sigma(
                self.params.endpoint_sigma_ratio, width)
        return self._sigma_cache[width]

    def trial_events(self, view: PointingView) -> list[ControlEvent]:
        p = self.params
        rng = self.rng
        id_nom = math.log2(view.distance / view.width + 1.0)
        st = p.a_true + p.b_true * id_nom
        if p.time_noise_frac > 0:
            st *= 1.0 + p.time_noise_frac * rng.standard_normal()
        st = max(st, 0.05)
        extra = 0.0
        if p.lapse_rate_per_bit > 0 and p.lapse_mean_s > 0:
            if rng.random() < min(0.9, p.lapse_rate_per_bit * id_nom):
                extra = rng.exponential(p.lapse_mean_s)

        tx, ty = view.target_pos
        sigma = self._axis_sigma(view.width)
        end = (tx + sigma * rng.standard_normal(),
               ty + sigma * rng.standard_normal())
        hit = math.hypot(end[0] - tx, end[1] - ty) < view.width / 2.0
        deliberate_miss = rng.random() < p.misclick_rate
        miss_point: tuple[float, float] | None = None
        if deliberate_miss:
            phi = rng.uniform(0.0, 2.0 * math.pi)
            miss_point = (tx + 0.75 * view.width * math.cos(phi),
                          ty + 0.75 * view.width * math.sin(phi))

        onset = view.onset_t
        press_t = onset + (st + extra) * 1000.0
        move_start = max(onset + 0.25 * st * 1000.0, self._clock + 1.0)
        move_end = max(onset + 0.90 * st * 1000.0, move_start + MOVE_STEPS)

        events: list[ControlEvent] = []

        def walk(frm: tuple[float, float], to: tuple[float, float],
                 t_a: float, t_b: float, steps: int) -> None:
            prev = frm
            for k in range(1, steps + 1):
                u = k / steps
                pos = (frm[0] + u * (to[0] - frm[0]),
                       frm[1] + u * (to[1] - frm[1]))
                t = t_a + (t_b - t_a) * k / steps
                events.append(PointerDelta(t, pos[0] - prev[0], pos[1] - prev[1]))
                prev = pos

        if miss_point is not None:
            mid = move_start + 0.45 * (move_end - move_start)
            walk(view.pointer, miss_point, move_start, mid, MOVE_STEPS // 2)
            miss_press = mid + 1.0
            events.append(ClickPress(miss_press))
            miss_release = miss_press + CLICK_HOLD_MS
            events.append(ClickRelease(miss_release))
            leg2_start = max(mid + 0.1 * (move_end - move_start),
                             miss_release + 1.0)
            walk(miss_point, end, leg2_start, max(move_end, leg2_start + 1.0),
                 MOVE_STEPS // 2)
        else:
            walk(view.pointer, end, move_start, move_end, MOVE_STEPS)

        events.append(ClickPress(press_t))
        events.append(ClickRelease(press_t + CLICK_HOLD_MS))
        self._clock = press_t + CLICK_HOLD_MS
        if not hit:
            # The attempt was a miss click; recover with a deliberate
            # click at the exact center.
            move_t = press_t + CORRECTION_MOVE_MS
            events.append(PointerDelta(move_t, tx - end[0], ty - end[1]))
            fix_t = press_t + CORRECTION_CLICK_MS
            events.append(ClickPress(fix_t))
            events.append(ClickRelease(fix_t + CLICK_HOLD_MS))
            self._clock = fix_t + CLICK_HOLD_MS
        return events


@dataclass(frozen=True)
class ArmAgentParams:
    speed_mps: float = 0.1
    reaction_s: float = 0.5
    step_ms: float = 50.0
    heartbeat_ms: float = 100.0
    seed: int = 0

    def validate(self) -> None:
        if self.speed_mps <= 0:
            raise AgentError("speed_mps must be > 0")
        if self.step_ms <= 0 or self.heartbeat_ms <= 0:
            raise AgentError("step and heartbeat periods must be > 0")
        if self.reaction_s < 0:
            raise AgentError("reaction_s must be >= 0")


class ArmAgent:
    """Straight-line reach agent for the 3D task."""

    def __init__(self, params: ArmAgentParams,
                 rng: np.random.Generator | None = None):
        params.validate()
        self.params = params
        self.rng = rng if rng is not None else np.random.default_rng(params.seed)
        self._clock = 0.0

    def _leg(self, events: list[ControlEvent], frm, to, t_start: float,
             gain: float) -> tuple[tuple[float, float, float], float]:
        """March frm -> to in fixed time steps; returns (final pos, arrival t)."""
        p = self.params
        step_s = p.step_ms / 1000.0
        dist = math.dist(frm, to)
        steps = max(1, math.ceil(dist / (p.speed_mps * step_s)))
        prev = frm
        t = t_start
        for k in range(1, steps + 1):
            u = k / steps
            pos = tuple(frm[i] + u * (to[i] - frm[i]) for i in range(3))
            t = t_start + k * p.step_ms
            events.append(PointerDelta(t, (pos[0] - prev[0]) / gain,
                                       (pos[1] - prev[1]) / gain))
            events.append(ZDelta(t, pos[2] - prev[2]))
            prev = pos
        return prev, t

    def trial_events(self, view: ArmView, gain: float,
                     dwell_ms: float = 1000.0) -> list[ControlEvent]:
        """Tape for one trial: out, dwell, back, dwell, plus heartbeats."""
        p = self.params
        t0 = max(view.onset_t, self._clock) + p.reaction_s * 1000.0
        events: list[ControlEvent] = []

        def dwell_at(entry_t: float, until_margin: float) -> float:
            t = entry_t
            deadline = entry_t + until_margin
            while t < deadline:
                t += p.heartbeat_ms
                events.append(PointerDelta(t, 0.0, 0.0))
            return t

        # Outbound: the sphere is entered at the first step strictly
        # inside it; mirror the task's geometry to find that step.
        pos = view.endpoint
        target = view.target
        entry_out = self._entry_time(pos, target.center, target.radius, t0)
        pos, t_arr = self._leg(events, pos, target.center, t0, gain)
        dwell_done = entry_out + dwell_ms
        t_hb = dwell_at(max(t_arr, entry_out), dwell_done - max(t_arr, entry_out)
                        + 2.0 * p.heartbeat_ms)

        back_start = max(dwell_done + p.step_ms, t_hb + p.step_ms)
        start = view.start
        entry_back = self._entry_time(pos, start.center, start.radius, back_start)
        pos, t_arr2 = self._leg(events, pos, start.center, back_start, gain)
        done = entry_back + dwell_ms
        t_end = dwell_at(max(t_arr2, entry_back), done - max(t_arr2, entry_back)
                         + 2.0 * p.heartbeat_ms)
        self._clock = max(t_end, done)
        return events

    def _entry_time(self, frm, center, radius: float, t_start: float) -> float:
        """First step time at which the marching position is inside."""
        p = self.params
        step_s = p.step_ms / 1000.0
        dist = math.dist(frm, center)
        steps = max(1, math.ceil(dist / (p.speed_mps * step_s)))
        for k in range(1, steps + 1):
            u = k / steps
            pos = tuple(frm[i] + u * (center[i] - frm[i]) for i in range(3))
            if math.dist(pos, center) < radius:
                return t_start + k * p.step_ms
        return t_start + steps * p.step_ms


def run_pointing_session(params: AgentParams, seed: int,
                         runs: int = 2, trials_per_run: int = 50,
                         agent_rng: np.random.Generator | None = None,
                         on_event: Callable[[ControlEvent], None] | None = None,
                         on_trial: Callable[[TrialRecord2D], None] | None = None,
                         task: PointingTask | None = None,
                         ) -> tuple[PointingTask, list[TrialRecord2D]]:
    """Drive one pointing session to completion with one agent."""
    if task is None:
        task = PointingTask(seed=seed, runs=runs, trials_per_run=trials_per_run)
    agent = PointingAgent(params, rng=agent_rng)
    task.start(0.0)
    while not task.done:
        before = len(task.records)
        for event in agent.trial_events(task.view()):
            if on_event is not None:
                on_event(event)
            record = task.step(event)
            if record is not None and on_trial is not None:
                on_trial(record)
        if len(task.records) == before:
            raise AgentError("agent tape failed to complete a trial")
    return task, task.records


def run_pointing_cohort(params: AgentParams, participants: int = 8,
                        runs: int = 2, trials_per_run: int = 50,
                        ) -> list[list[TrialRecord2D]]:
    """Seeded cohort; every participant gets independent task and agent
    randomness derived from params.seed."""
    root = np.random.SeedSequence(params.seed)
    children = root.spawn(participants)
    cohort = []
    for child in children:
        task_seed_seq, agent_seq = child.spawn(2)
        task_seed = int(task_seed_seq.generate_state(1)[0])
        rng = np.random.default_rng(agent_seq)
        _, records = run_pointing_session(params, seed=task_seed,
                                          runs=runs,
                                          trials_per_run=trials_per_run,
                                          agent_rng=rng)
        cohort.append(records)
    return cohort


def run_arm_session(params: ArmAgentParams, seed: int, trials: int = 20,
                    agent_rng: np.random.Generator | None = None,
                    on_event: Callable[[ControlEvent], None] | None = None,
                    on_trial: Callable[[TrialRecord3D], None] | None = None,
                    task: ArmTask | None = None,
                    ) -> tuple[ArmTask, list[TrialRecord3D]]:
    """Drive one reach-and-hold session to completion."""
    if task is None:
        task = ArmTask(seed=seed, trials=trials)
    agent = ArmAgent(params, rng=agent_rng)
    task.start(0.0)
    while not task.done:
        before = len(task.records)
        for event in agent.trial_events(task.view(), task.gain, task.dwell_ms):
            if on_event is not None:
                on_event(event)
            record = task.step(event)
            if record is not None and on_trial is not None:
                on_trial(record)
        if len(task.records) == before:
            raise AgentError("arm agent tape failed to complete a trial")
    return task, task.records
