"""Sensor frame type shared by the wire codec, simulator and translator."""

from __future__ import annotations

from typing import NamedTuple

ACCEL_MIN = -32768
ACCEL_MAX = 32767
STRETCH_MAX = 1023
SEQ_MOD = 65536


class FrameRangeError(ValueError):
    """A frame field is outside its sensor range."""


class SensorFrame(NamedTuple):
    """One reading: 3-axis acceleration, stretch-cord ADC counts, push button.

    `seq` wraps modulo 65536; `t_ms` is milliseconds since stream start
    (unrolled on the host, only the low 16 bits travel on the wire).
    Acceleration is in milli-g.
    """

    seq: int
    t_ms: int
    ax: int
    ay: int
    az: int
    stretch: int
    button: bool

    def validate(self) -> None:
        if not 0 <= self.seq < SEQ_MOD:
            raise FrameRangeError(f"seq {self.seq} outside 0..65535")
        if self.t_ms < 0:
            raise FrameRangeError(f"t_ms {self.t_ms} negative")
        for name in ("ax", "ay", "az"):
            v = getattr(self, name)
            if not ACCEL_MIN <= v <= ACCEL_MAX:
                raise FrameRangeError(f"{name} {v} outside {ACCEL_MIN}..{ACCEL_MAX}")
        if not 0 <= self.stretch <= STRETCH_MAX:
            raise FrameRangeError(f"stretch {self.stretch} outside 0..{STRETCH_MAX}")
