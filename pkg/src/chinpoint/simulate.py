"""Virtual sensor board: scripted gestures, noise, wire encoding.

Scripts operate directly in sensor space (milli-g, ADC counts). Frame
timestamps land on the grid t_i = (i+1)/rate so the final frame of each
segment reproduces the segment target exactly when no noise is applied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .frames import ACCEL_MAX, ACCEL_MIN, SEQ_MOD, STRETCH_MAX, SensorFrame
from .wire import encode_frame

RATE_MIN_HZ = 10.0
RATE_MAX_HZ = 1000.0

INTERP_MODES = ("hold", "ramp")


class ScriptError(ValueError):
    """Malformed gesture script or rate out of range."""


@dataclass(frozen=True)
class Segment:
    """One scripted stretch of time with a sensor-space target."""

    duration_ms: float
    ax: float = 0.0
    ay: float = 0.0
    az: float = 0.0
    stretch: float = 0.0
    button: bool = False
    interp: str = "ramp"

    def validate(self) -> None:
        if not self.duration_ms > 0:
            raise ScriptError(f"segment duration must be > 0, got {self.duration_ms}")
        if self.interp not in INTERP_MODES:
            raise ScriptError(f"unknown interpolation {self.interp!r}")
        for name, value, lo, hi in (("ax", self.ax, ACCEL_MIN, ACCEL_MAX),
                                    ("ay", self.ay, ACCEL_MIN, ACCEL_MAX),
                                    ("az", self.az, ACCEL_MIN, ACCEL_MAX),
                                    ("stretch", self.stretch, 0, STRETCH_MAX)):
            if not lo <= value <= hi:
                raise ScriptError(f"segment target {name}={value} outside sensor range")


@dataclass(frozen=True)
class GestureScript:
    """Ordered segments played back to back, starting from all-zero rest."""

    segments: tuple[Segment, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ScriptError("script needs at least one segment")
        for seg in self.segments:
            seg.validate()

    @property
    def total_ms(self) -> float:
        return sum(seg.duration_ms for seg in self.segments)

    def to_json(self) -> str:
        records = [{"duration_ms": s.duration_ms, "ax": s.ax, "ay": s.ay,
                    "az": s.az, "stretch": s.stretch, "button": s.button,
                    "interp": s.interp} for s in self.segments]
        return json.dumps(records, indent=2)


def load_script(text: str) -> GestureScript:
    """Parse a JSON array of segment records."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScriptError(f"script is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ScriptError("script must be a JSON array of segments")
    segments = []
    for i, rec in enumerate(raw):
        if not isinstance(rec, dict):
            raise ScriptError(f"segment {i} is not an object")
        unknown = set(rec) - {"duration_ms", "ax", "ay", "az", "stretch",
                              "button", "interp"}
        if unknown:
            raise ScriptError(f"segment {i} has unknown keys {sorted(unknown)}")
        if "duration_ms" not in rec:
            raise ScriptError(f"segment {i} missing duration_ms")
        segments.append(Segment(**rec))
    return GestureScript(tuple(segments))


@dataclass(frozen=True)
class NoiseModel:
    """Additive disturbances applied before quantization."""

    sigma_ax: float = 0.0
    sigma_ay: float = 0.0
    sigma_az: float = 0.0
    sigma_stretch: float = 0.0
    tremor_amp: float = 0.0
    tremor_hz: float = 0.0
    dropout: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        for name in ("sigma_ax", "sigma_ay", "sigma_az", "sigma_stretch",
                     "tremor_amp"):
            if getattr(self, name) < 0:
                raise ScriptError(f"{name} must be >= 0")
        if not 0.0 <= self.dropout < 1.0:
            raise ScriptError("dropout must be in [0, 1)")


def _clamp(value: float, lo: int, hi: int) -> int:
    v = int(round(value))
    return lo if v < lo else (hi if v > hi else v)


def synthesize(script: GestureScript, noise: NoiseModel | None = None,
               rate_hz: float = 100.0, start_seq: int = 0,
               ) -> list[SensorFrame]:
    """Render a script into SensorFrames at a fixed rate.

    Dropped frames (dropout noise) still consume a sequence number, so
    downstream gap accounting sees realistic discontinuities.
    """
    if not RATE_MIN_HZ <= rate_hz <= RATE_MAX_HZ:
        raise ScriptError(f"rate {rate_hz} Hz outside {RATE_MIN_HZ}-{RATE_MAX_HZ}")
    if noise is not None:
        noise.validate()
    rng = np.random.default_rng(noise.seed) if noise is not None else None

    bounds: list[float] = []
    acc = 0.0
    for seg in script.segments:
        acc += seg.duration_ms
        bounds.append(acc)
    total_ms = acc
    n = int(round(total_ms * rate_hz / 1000.0))

    frames: list[SensorFrame] = []
    seg_idx = 0
    prev_target = (0.0, 0.0, 0.0, 0.0)
    for i in range(n):
        t = (i + 1) * 1000.0 / rate_hz
        while seg_idx < len(bounds) - 1 and t > bounds[seg_idx] + 1e-9:
            seg = script.segments[seg_idx]
            prev_target = (seg.ax, seg.ay, seg.az, seg.stretch)
            seg_idx += 1
        seg = script.segments[seg_idx]
        seg_start = bounds[seg_idx] - seg.duration_ms
        target = (seg.ax, seg.ay, seg.az, seg.stretch)
        if seg.interp == "hold":
            values = list(target)
        else:
            u = (t - seg_start) / seg.duration_ms
            u = 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)
            values = [p + u * (q - p) for p, q in zip(prev_target, target)]

        if noise is not None:
            if noise.tremor_amp > 0.0:
                wobble = noise.tremor_amp * math.sin(
                    2.0 * math.pi * noise.tremor_hz * t / 1000.0)
                values[0] += wobble
                values[1] += wobble
            normals = rng.normal(0.0, 1.0, 4)
            values[0] += noise.sigma_ax * normals[0]
            values[1] += noise.sigma_ay * normals[1]
            values[2] += noise.sigma_az * normals[2]
            values[3] += noise.sigma_stretch * normals[3]
            dropped = rng.random() < noise.dropout
        else:
            dropped = False

        if dropped:
            continue
        frames.append(SensorFrame(
            seq=(start_seq + i) % SEQ_MOD,
            t_ms=int(round(t)),
            ax=_clamp(values[0], ACCEL_MIN, ACCEL_MAX),
            ay=_clamp(values[1], ACCEL_MIN, ACCEL_MAX),
            az=_clamp(values[2], ACCEL_MIN, ACCEL_MAX),
            stretch=_clamp(values[3], 0, STRETCH_MAX),
            button=seg.button,
        ))
    return frames


def stream_over_wire(frames: Sequence[SensorFrame]) -> bytes:
    """Concatenated wire encoding of the frames."""
    return b"".join(encode_frame(f) for f in frames)


def corrupt(data: bytes, rate: float, seed: int = 0,
            ) -> tuple[bytes, list[int]]:
    """Flip random bytes; returns (corrupted, positions actually changed).

    Each selected byte is XORed with a nonzero value, so every returned
    position differs from the original. Positions are sorted.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError("corruption rate must be in [0, 1]")
    arr = np.frombuffer(data, dtype=np.uint8).copy()
    rng = np.random.default_rng(seed)
    idx = np.nonzero(rng.random(arr.shape[0]) < rate)[0]
    if idx.size:
        arr[idx] ^= rng.integers(1, 256, size=idx.size, dtype=np.uint8)
    return arr.tobytes(), idx.tolist()
