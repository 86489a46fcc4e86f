"""Throughput benchmark: compiled wire kernel vs pure-Python fallback.

Builds one large byte stream (clean frames plus scattered corruption),
then times each backend's scan kernel over it. Run from the repo root:

    python benchmarks/bench_wire.py [--frames 1000000] [--corrupt 0.002]
"""

from __future__ import annotations

import argparse
import time

from chinpoint import _wire_py
from chinpoint.frames import SensorFrame
from chinpoint.simulate import (GestureScript, Segment, corrupt,
                                stream_over_wire, synthesize)

try:
    from chinpoint import _wire_cy
except ImportError:
    _wire_cy = None


def build_stream(n_frames: int, corrupt_rate: float, seed: int) -> bytes:
    rate_hz = 200.0
    duration_ms = n_frames * 1000.0 / rate_hz
    script = GestureScript((
        Segment(duration_ms / 2, ax=400, ay=-200, az=100, stretch=700),
        Segment(duration_ms / 2, ax=-400, ay=200, az=-100, stretch=100),
    ))
    frames = synthesize(script, None, rate_hz)
    data = stream_over_wire(frames)
    if corrupt_rate > 0:
        data, _ = corrupt(data, corrupt_rate, seed=seed)
    return data


def run_kernel(kernel, data: bytes, repeats: int) -> tuple[float, int, int]:
    best = float("inf")
    n_frames = crc_failures = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel.scan(data, SensorFrame, False, 0, 0, False, 0)
        best = min(best, time.perf_counter() - t0)
        n_frames, crc_failures = len(out[0]), out[2]
    return best, n_frames, crc_failures


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--frames", type=int, default=1_000_000)
    ap.add_argument("--corrupt", type=float, default=0.002)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()

    data = build_stream(args.frames, args.corrupt, args.seed)
    print(f"stream: {len(data)} bytes (~{args.frames} frames, "
          f"corrupt rate {args.corrupt})")

    results = {}
    for kernel in (k for k in (_wire_cy, _wire_py) if k is not None):
        dt, n, bad = run_kernel(kernel, data, args.repeats)
        results[kernel.NAME] = dt
        mbs = len(data) / dt / 1e6
        print(f"{kernel.NAME:>8}: {dt * 1e3:8.1f} ms  {mbs:8.1f} MB/s  "
              f"{n} frames, {bad} crc failures")

    if _wire_cy is None:
        print("compiled kernel not built; only the fallback was timed")
    else:
        print(f"speedup: {results[_wire_py.NAME] / results[_wire_cy.NAME]:.1f}x")


if __name__ == "__main__":
    main()
