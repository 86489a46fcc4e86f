"""Command line entry points."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .agents import AgentParams, ArmAgentParams
from .profile import CalibrationProfile, ProfileError, load_profile, save_profile
from .report import (analyze_cohort, report_to_csv, report_to_text,
                     summarize_arm, trials2d_from_log, trials3d_from_log)
from .service import SessionConfig, run_session
from .sessionlog import load_session_log
from .simulate import NoiseModel, load_script, stream_over_wire, synthesize
from .wire import BACKEND

_AGENT_KEYS = {"a": "a_true", "b": "b_true", "sigma": "endpoint_sigma_ratio",
               "misclick": "misclick_rate", "seed": "seed",
               "noise": "time_noise_frac", "lapse": "lapse_rate_per_bit",
               "lapse_mean": "lapse_mean_s"}
_ARM_KEYS = {"speed": "speed_mps", "reaction": "reaction_s",
             "step": "step_ms", "heartbeat": "heartbeat_ms", "seed": "seed"}


def _parse_kv(spec: str, mapping: dict[str, str]) -> dict:
    out: dict = {}
    if not spec:
        return out
    for part in spec.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in mapping:
            raise click.BadParameter(
                f"unknown key {key!r}; expected one of {sorted(mapping)}")
        field = mapping[key]
        out[field] = int(value) if field == "seed" else float(value)
    return out


@click.group()
def main() -> None:
    """Hands-free interface toolkit: simulator, tasks, analytics, service."""


@main.command()
@click.option("--script", "script_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--rate", default=100.0, show_default=True, help="frames per second")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--dropout", default=0.0, show_default=True)
@click.option("--sigma-accel", default=0.0, show_default=True,
              help="gaussian noise on the tilt channels, milli-g")
@click.option("--sigma-stretch", default=0.0, show_default=True)
@click.option("--tremor-amp", default=0.0, show_default=True)
@click.option("--tremor-hz", default=0.0, show_default=True)
def simulate(script_path: str, rate: float, seed: int, out_path: str,
             dropout: float, sigma_accel: float, sigma_stretch: float,
             tremor_amp: float, tremor_hz: float) -> None:
    """Render a gesture script to a wire-format byte stream."""
    script = load_script(Path(script_path).read_text())
    noise = None
    if any((dropout, sigma_accel, sigma_stretch, tremor_amp)):
        noise = NoiseModel(sigma_ax=sigma_accel, sigma_ay=sigma_accel,
                           sigma_az=sigma_accel, sigma_stretch=sigma_stretch,
                           tremor_amp=tremor_amp, tremor_hz=tremor_hz,
                           dropout=dropout, seed=seed)
    frames = synthesize(script, noise, rate)
    data = stream_over_wire(frames)
    Path(out_path).write_bytes(data)
    click.echo(f"{len(frames)} frames, {len(data)} bytes -> {out_path}")


@main.command()
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--base", "base_path", type=click.Path(exists=True, dir_okay=False),
              help="profile file to start from (defaults to built-in values)")
@click.option("--set", "assignments", multiple=True, metavar="KEY=VALUE",
              help="override one profile field (repeatable)")
def calibrate(out_path: str, base_path: str | None,
              assignments: tuple[str, ...]) -> None:
    """Write a validated calibration profile file."""
    profile = (load_profile(Path(base_path).read_text()) if base_path
               else CalibrationProfile())
    updates: dict = {}
    for item in assignments:
        key, _, value = item.partition("=")
        try:
            updates[key.strip()] = float(value)
        except ValueError as exc:
            raise click.BadParameter(f"bad value in {item!r}") from exc
    try:
        profile = profile.merged(updates) if updates else profile
        profile.validate()
    except ProfileError as exc:
        raise click.ClickException(str(exc)) from exc
    Path(out_path).write_text(save_profile(profile))
    click.echo(f"profile written to {out_path}")


@main.command("run-pointing")
@click.option("--agent", "agent_spec", default="a=0.5,b=2.0,sigma=0.12",
              show_default=True, help="comma list: a,b,sigma,misclick,seed,...")
@click.option("--participants", default=8, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--runs", default=2, show_default=True)
@click.option("--trials-per-run", default=50, show_default=True)
@click.option("--out-dir", "out_dir", required=True, type=click.Path(file_okay=False))
def run_pointing(agent_spec: str, participants: int, seed: int, runs: int,
                 trials_per_run: int, out_dir: str) -> None:
    """Run agent-driven pointing sessions, one log per participant."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = _parse_kv(agent_spec, _AGENT_KEYS)
    base.setdefault("seed", seed)
    for i in range(participants):
        params = AgentParams(**{**base, "seed": int(base["seed"]) + i})
        config = SessionConfig(
            mode="pointing", source="agent", agent=params,
            seed=int(base["seed"]) + i, participant=f"p{i}",
            runs=runs, trials_per_run=trials_per_run,
            log_path=str(out / f"pointing-p{i}.jsonl"))
        summary = run_session(config)
        click.echo(f"p{i}: {summary['trials']} trials -> {config.log_path}")


@main.command("run-arm")
@click.option("--agent", "agent_spec", default="speed=0.1",
              show_default=True, help="comma list: speed,reaction,step,heartbeat,seed")
@click.option("--seed", default=7, show_default=True)
@click.option("--trials", default=20, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def run_arm(agent_spec: str, seed: int, trials: int, out_path: str) -> None:
    """Run one agent-driven reach-and-hold session."""
    kv = _parse_kv(agent_spec, _ARM_KEYS)
    kv.setdefault("seed", seed)
    params = ArmAgentParams(**{**kv, "seed": int(kv["seed"])})
    config = SessionConfig(mode="arm3d", source="agent", arm_agent=params,
                           seed=int(kv["seed"]), arm_trials=trials,
                           log_path=out_path)
    summary = run_session(config)
    records = trials3d_from_log(load_session_log(out_path))
    stats = summarize_arm(records, trials)
    click.echo(f"{summary['trials']} trials, "
               f"mean completion {stats['mean_completion_s']:.2f} s -> {out_path}")


def _load_cohort(paths: list[Path]) -> list:
    by_participant: dict[str, list] = {}
    for path in paths:
        log = load_session_log(path)
        if log.mode != "pointing":
            continue
        label = log.header.get("participant", path.stem)
        by_participant.setdefault(label, []).extend(trials2d_from_log(log))
    if not by_participant:
        raise click.ClickException("no pointing logs found")
    return [by_participant[k] for k in sorted(by_participant)]


def _gather_logs(in_path: str) -> list[Path]:
    p = Path(in_path)
    if p.is_dir():
        paths = sorted(p.glob("*.jsonl"))
    else:
        paths = [p]
    if not paths:
        raise click.ClickException(f"no .jsonl logs under {in_path}")
    return paths


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--exclude-over", default=25.0, show_default=True,
              help="drop trials slower than this many seconds; <0 disables")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--include-center/--peripheral-only", default=True, show_default=True)
def analyze(in_path: str, exclude_over: float, out_path: str,
            include_center: bool) -> None:
    """Compute the performance table from session logs; write CSV."""
    cohort = _load_cohort(_gather_logs(in_path))
    limit = exclude_over if exclude_over >= 0 else None
    rep = analyze_cohort(cohort, label="cohort", exclude_over_s=limit,
                         include_center=include_center)
    Path(out_path).write_text(report_to_csv([rep]))
    click.echo(f"report -> {out_path}")


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--exclude-over", default=25.0, show_default=True)
@click.option("--include-center/--peripheral-only", default=True, show_default=True)
def report(in_path: str, exclude_over: float, include_center: bool) -> None:
    """Print filtered and unfiltered performance tables."""
    paths = _gather_logs(in_path)
    arm_logs = [p for p in paths if load_session_log(p).mode == "arm3d"]
    try:
        cohort = _load_cohort(paths)
    except click.ClickException:
        cohort = None
    reports = []
    if cohort:
        reports.append(analyze_cohort(cohort, label="unfiltered",
                                      exclude_over_s=None,
                                      include_center=include_center))
        if exclude_over >= 0:
            reports.append(analyze_cohort(cohort, label=f"filtered (>{exclude_over}s dropped)",
                                          exclude_over_s=exclude_over,
                                          include_center=include_center))
    click.echo(report_to_text(reports), nl=False)
    for path in arm_logs:
        log = load_session_log(path)
        records = trials3d_from_log(log)
        expected = log.header.get("trials", len(records))
        stats = summarize_arm(records, expected)
        click.echo(f"arm session {log.session_id}: "
                   f"mean completion {stats['mean_completion_s']:.2f} s over "
                   f"{stats['trials']} trials")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Start the WebSocket session service."""
    import uvicorn

    from .server import app
    click.echo(f"wire backend: {BACKEND}")
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command()
def backend() -> None:
    """Print which wire decoder backend is active."""
    click.echo(BACKEND)


if __name__ == "__main__":
    main(prog_name="chinpoint")
