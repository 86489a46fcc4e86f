"""Session orchestration: source -> translator -> task -> log + live feed.

A session is one synchronous pipeline loop. Live consumers receive JSON
ready dicts through an on_message callback; inbound control (calibration
updates, stop) arrives through a queue and is applied only at frame
boundaries, so no event is ever produced from a half-updated profile.
"""

from __future__ import annotations

import dataclasses
import queue
import time
from dataclasses import dataclass, field
from typing import Callable

from .agents import (AgentParams, ArmAgentParams, run_arm_session,
                     run_pointing_session)
from .events import ControlEvent, Mode, event_to_dict
from .profile import CalibrationProfile, ProfileError
from .sessionlog import SessionLogWriter
from .simulate import GestureScript, NoiseModel, synthesize
from .tasks.arm import ArmTask, XY_GAIN_M_PER_PX
from .tasks.pointing import PointingTask
from .translator import Translator

MODES = ("pointing", "arm3d", "calibration")
SOURCES = ("agent", "simulator")

MessageSink = Callable[[dict], None]


class ConfigError(ValueError):
    """Session configuration is inconsistent."""


@dataclass
class SessionConfig:
    mode: str = "pointing"
    source: str = "agent"
    profile: CalibrationProfile = field(default_factory=CalibrationProfile)
    log_path: str | None = None
    log_events: bool = True
    seed: int = 0
    session_id: str | None = None
    participant: str = "p0"
    agent: AgentParams | None = None
    arm_agent: ArmAgentParams | None = None
    script: GestureScript | None = None
    noise: NoiseModel | None = None
    rate_hz: float = 100.0
    pace: str = "fast"  # "real" sleeps between frames
    runs: int = 2
    trials_per_run: int = 50
    arm_trials: int = 20
    gain_m_per_px: float = XY_GAIN_M_PER_PX
    trace_hz: float = 30.0

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.source not in SOURCES:
            raise ConfigError(f"unknown source {self.source!r}")
        if self.mode == "calibration" and self.source == "agent":
            raise ConfigError("calibration sessions need a frame source")
        if self.source == "simulator" and self.script is None:
            raise ConfigError("simulator source needs a script")
        if self.pace not in ("fast", "real"):
            raise ConfigError(f"unknown pace {self.pace!r}")
        self.profile.validate()

    def effective_session_id(self) -> str:
        if self.session_id:
            return self.session_id
        return f"{self.mode}-{self.source}-{self.participant}-seed{self.seed}"


class _Throttle:
    """Pass at most one item per interval of stream time."""

    def __init__(self, hz: float):
        self.interval = 1000.0 / hz if hz > 0 else 0.0
        self.last: float | None = None

    def ready(self, t_ms: float) -> bool:
        if self.interval <= 0.0:
            return True
        if self.last is None or t_ms - self.last >= self.interval:
            self.last = t_ms
            return True
        return False


class _Session:
    """Shared plumbing for one run_session call."""

    def __init__(self, config: SessionConfig, on_message: MessageSink | None,
                 control: "queue.Queue[dict] | None", stop) -> None:
        self.config = config
        self.on_message = on_message
        self.control = control
        self.stop = stop
        self.profile = config.profile
        self.writer: SessionLogWriter | None = None
        self.trace_throttle = _Throttle(config.trace_hz)
        self.state_throttle = _Throttle(config.trace_hz)
        self.task_state_count = 0
        self.trial_count = 0

    def emit(self, message: dict) -> None:
        if self.on_message is not None:
            self.on_message(message)

    def should_stop(self) -> bool:
        return self.stop is not None and self.stop.is_set()

    def open_log(self, mode: str, extra: dict) -> None:
        if self.config.log_path is None:
            return
        self.writer = SessionLogWriter(self.config.log_path)
        self.writer.write_header(
            session_id=self.config.effective_session_id(),
            mode=mode,
            profile=self.profile.to_dict(),
            **extra)

    def log_event(self, event: ControlEvent) -> None:
        if self.writer is not None and self.config.log_events:
            self.writer.write_event(event_to_dict(event))

    def log_trial(self, record_dict: dict) -> None:
        self.trial_count += 1
        if self.writer is not None:
            self.writer.write_trial(record_dict)

    def close_log(self, summary: dict) -> None:
        if self.writer is not None:
            self.writer.write_end(summary)
            self.writer.close()

    def drain_control(self, translator: Translator | None) -> None:
        """Apply queued calibration updates in arrival order."""
        if self.control is None:
            return
        while True:
            try:
                item = self.control.get_nowait()
            except queue.Empty:
                return
            kind = item.get("kind") or item.get("type")
            if kind in ("calib", "calib_update"):
                values = item.get("updates", item.get("values", {}))
                ack = {"type": "calib_ack"}
                if "request_id" in item:
                    ack["request_id"] = item["request_id"]
                try:
                    merged = self.profile.merged(values)
                except (ProfileError, TypeError) as exc:
                    self.emit({**ack, "ok": False, "reason": str(exc),
                               "profile": self.profile.to_dict()})
                    continue
                self.profile = merged
                if translator is not None:
                    translator.set_profile(merged)
                self.emit({**ack, "ok": True, "profile": merged.to_dict()})
            elif kind == "stop" and self.stop is not None:
                self.stop.set()

    def task_state_message(self, task, t_ms: float) -> dict:
        self.task_state_count += 1
        if isinstance(task, PointingTask):
            if task.done or not task.started:
                return {"type": "task_state", "mode": "pointing",
                        "seq": self.task_state_count, "t_ms": t_ms,
                        "done": True, "trial": task.trial_index,
                        "trials_total": len(task.schedule)}
            view = task.view()
            return {"type": "task_state", "mode": "pointing",
                    "seq": self.task_state_count, "t_ms": t_ms, "done": False,
                    "trial": view.trial_index,
                    "trials_total": len(task.schedule),
                    "pointer": list(view.pointer),
                    "target": {"x": view.target_pos[0], "y": view.target_pos[1],
                               "width": view.width,
                               "is_center": view.is_center},
                    "halted": view.halted}
        if task.done or not task.started:
            return {"type": "task_state", "mode": "arm3d",
                    "seq": self.task_state_count, "t_ms": t_ms, "done": True,
                    "trial": task.trial_index, "trials_total": task.trials}
        view = task.view()
        return {"type": "task_state", "mode": "arm3d",
                "seq": self.task_state_count, "t_ms": t_ms, "done": False,
                "trial": view.trial_index, "trials_total": task.trials,
                "phase": view.phase,
                "endpoint": list(view.endpoint),
                "target": {"center": list(view.target.center),
                           "radius": view.target.radius},
                "start": {"center": list(view.start.center),
                          "radius": view.start.radius},
                "dwell_progress": task.dwell_progress(t_ms)}


def run_session(config: SessionConfig,
                on_message: MessageSink | None = None,
                control: "queue.Queue[dict] | None" = None,
                stop=None) -> dict:
    """Drive one session to completion (or stop); returns a summary."""
    config.validate()
    session = _Session(config, on_message, control, stop)
    if config.source == "agent":
        summary = _run_agent_session(session)
    else:
        summary = _run_simulator_session(session)
    session.emit({"type": "session_end", "summary": summary})
    return summary


def _run_agent_session(session: _Session) -> dict:
    config = session.config
    mode = config.mode

    if mode == "pointing":
        params = config.agent or AgentParams(seed=config.seed)
        task = PointingTask(seed=config.seed, runs=config.runs,
                            trials_per_run=config.trials_per_run)
        session.open_log("pointing", {
            "source": "agent",
            "seed": config.seed,
            "participant": config.participant,
            "runs": config.runs,
            "trials_per_run": config.trials_per_run,
            "agent": dataclasses.asdict(params),
        })
        run_pointing_session(
            params, seed=config.seed, runs=config.runs,
            trials_per_run=config.trials_per_run,
            on_event=lambda e: _agent_event(session, e, task),
            on_trial=lambda r: _agent_trial(session, r),
            task=task)
        records = task.records
    else:
        params3 = config.arm_agent or ArmAgentParams(seed=config.seed)
        task = ArmTask(seed=config.seed, trials=config.arm_trials,
                       gain_m_per_px=config.gain_m_per_px)
        session.open_log("arm3d", {
            "source": "agent",
            "seed": config.seed,
            "participant": config.participant,
            "trials": config.arm_trials,
            "gain_m_per_px": config.gain_m_per_px,
            "agent": dataclasses.asdict(params3),
        })
        run_arm_session(
            params3, seed=config.seed, trials=config.arm_trials,
            on_event=lambda e: _agent_event(session, e, task),
            on_trial=lambda r: _agent_trial(session, r),
            task=task)
        records = task.records
    summary = {"session_id": config.effective_session_id(),
               "mode": mode, "trials": len(records), "complete": True,
               "task_state_count": session.task_state_count}
    session.close_log({"complete": True})
    return summary


def _agent_trial(session: _Session, record) -> None:
    session.log_trial(record.to_dict())
    session.emit({"type": "trial", "record": record.to_dict()})


def _agent_event(session: _Session, event: ControlEvent, task) -> None:
    """Per-event plumbing shared by both agent modes."""
    session.drain_control(None)
    session.log_event(event)
    session.emit({"type": "event", "event": event_to_dict(event)})
    if session.state_throttle.ready(float(event.t_ms)):
        session.emit(session.task_state_message(task, float(event.t_ms)))


def _run_simulator_session(session: _Session) -> dict:
    config = session.config
    frames = synthesize(config.script, config.noise, config.rate_hz,
                        )
    active_mode = Mode.ARM3D if config.mode == "arm3d" else Mode.POINTING
    translator = Translator(session.profile, active_mode)
    task = None
    if config.mode == "pointing":
        task = PointingTask(seed=config.seed, runs=config.runs,
                            trials_per_run=config.trials_per_run)
    elif config.mode == "arm3d":
        task = ArmTask(seed=config.seed, trials=config.arm_trials,
                       gain_m_per_px=config.gain_m_per_px)
    session.open_log(config.mode, {
        "source": "simulator",
        "seed": config.seed,
        "participant": config.participant,
        "rate_hz": config.rate_hz,
        "script_segments": len(config.script.segments),
        "noise": dataclasses.asdict(config.noise) if config.noise else None,
    })
    if task is not None:
        task.start(0.0)

    dt_s = 1.0 / config.rate_hz
    last_t = 0.0
    complete = False
    for frame in frames:
        if session.should_stop():
            break
        session.drain_control(translator)
        events = translator.feed(frame)
        t_ms = float(frame.t_ms)
        last_t = t_ms
        for event in events:
            session.log_event(event)
            session.emit({"type": "event", "event": event_to_dict(event)})
            if task is not None and not task.done:
                record = task.step(event)
                if record is not None:
                    session.log_trial(record.to_dict())
                    session.emit({"type": "trial", "record": record.to_dict()})
        if isinstance(task, ArmTask) and not task.done:
            record = task.tick(t_ms)
            if record is not None:
                session.log_trial(record.to_dict())
                session.emit({"type": "trial", "record": record.to_dict()})
        if session.trace_throttle.ready(t_ms):
            filt = translator.last_filtered
            session.emit({"type": "trace", "t_ms": t_ms,
                          "ax": filt.ax, "ay": filt.ay, "az": filt.az,
                          "stretch": filt.stretch,
                          "button": filt.button,
                          "mode": translator.mode.value})
        if task is not None and not task.done and session.state_throttle.ready(t_ms):
            session.emit(session.task_state_message(task, t_ms))
        if config.pace == "real":
            time.sleep(dt_s)
    if isinstance(task, ArmTask) and not task.done:
        record = task.finish(last_t)
        if record is not None:
            session.log_trial(record.to_dict())
            session.emit({"type": "trial", "record": record.to_dict()})
    if task is not None:
        complete = task.done
    else:
        complete = not session.should_stop()
    summary = {"session_id": config.effective_session_id(),
               "mode": config.mode, "trials": session.trial_count,
               "complete": complete,
               "task_state_count": session.task_state_count}
    session.close_log({"complete": complete})
    return summary
