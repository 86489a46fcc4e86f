"""Calibration profile: thresholds, speeds and filter parameters.

Profiles are immutable snapshots; live recalibration swaps a whole profile
between frames. The text format is line-oriented ``key=value`` (UTF-8,
``#`` comments); unknown keys survive a load/save round trip so profiles
can carry operator notes or fields from newer versions.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


class ProfileError(ValueError):
    """Invalid, incomplete or inconsistent calibration profile."""


@dataclass(frozen=True)
class CalibrationProfile:
    """Kinaesthetic map parameters.

    Tilt thresholds are milli-g on the filtered accelerometer channels;
    stretch thresholds are filtered ADC counts. The press/release pair is
    a hysteresis band (release < press). The down band (press_down <
    release_down) gates -Z in arm mode: slack below press_down drives -Z
    until the cord re-tightens past release_down.
    """

    tilt_pos_x: float = 200.0
    tilt_neg_x: float = -200.0
    tilt_pos_y: float = 200.0
    tilt_neg_y: float = -200.0
    stretch_press: float = 600.0
    stretch_release: float = 450.0
    stretch_press_down: float = 150.0
    stretch_release_down: float = 250.0
    speed_xy: float = 500.0          # px/s
    speed_z: float = 0.2             # m/s
    filter_min_cutoff: float = 1.0   # Hz
    filter_beta: float = 0.007
    debounce_ms: float = 200.0
    extras: tuple[tuple[str, str], ...] = ()

    def validate(self) -> None:
        problems = []
        if not self.tilt_neg_x < self.tilt_pos_x:
            problems.append("tilt_neg_x must be < tilt_pos_x")
        if not self.tilt_neg_y < self.tilt_pos_y:
            problems.append("tilt_neg_y must be < tilt_pos_y")
        if not self.stretch_release < self.stretch_press:
            problems.append("stretch_release must be < stretch_press")
        if not self.stretch_press_down < self.stretch_release_down:
            problems.append("stretch_press_down must be < stretch_release_down")
        if not self.stretch_release_down <= self.stretch_release:
            problems.append("stretch_release_down must be <= stretch_release")
        if self.speed_xy <= 0:
            problems.append("speed_xy must be > 0")
        if self.speed_z <= 0:
            problems.append("speed_z must be > 0")
        if self.filter_min_cutoff <= 0:
            problems.append("filter_min_cutoff must be > 0")
        if self.debounce_ms < 0:
            problems.append("debounce_ms must be >= 0")
        if problems:
            raise ProfileError("; ".join(problems))

    def merged(self, updates: dict[str, float]) -> "CalibrationProfile":
        """Validated copy with `updates` applied; raises ProfileError."""
        known = {f.name for f in fields(self)} - {"extras"}
        unknown = set(updates) - known
        if unknown:
            raise ProfileError(f"unknown profile keys: {sorted(unknown)}")
        merged = replace(self, **{k: float(v) for k, v in updates.items()})
        merged.validate()
        return merged

    def to_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name)
                for f in fields(self) if f.name != "extras"}


_FIELDS = tuple(f.name for f in fields(CalibrationProfile) if f.name != "extras")


def save_profile(profile: CalibrationProfile) -> str:
    lines = ["# chinpoint calibration profile"]
    lines += [f"{name}={getattr(profile, name)!r}" for name in _FIELDS]
    lines += [f"{k}={v}" for k, v in profile.extras]
    return "\n".join(lines) + "\n"


def load_profile(text: str) -> CalibrationProfile:
    values: dict[str, float] = {}
    extras: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ProfileError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _FIELDS:
            if key in values:
                raise ProfileError(f"line {lineno}: duplicate key {key}")
            try:
                values[key] = float(value)
            except ValueError:
                raise ProfileError(f"line {lineno}: bad number for {key}: {value!r}")
        else:
            extras.append((key, value))
    missing = [name for name in _FIELDS if name not in values]
    if missing:
        raise ProfileError(f"missing required keys: {missing}")
    profile = CalibrationProfile(extras=tuple(extras), **values)
    profile.validate()
    return profile
