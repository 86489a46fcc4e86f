"""Adaptive one-euro smoothing for the sensor channels.

First-order low-pass whose cutoff rises with the filtered derivative:
cutoff = min_cutoff + beta * |dx|. Low beta favours jitter rejection at
rest, fast motion passes with little lag.
"""

from __future__ import annotations

import math


def smoothing_factor(dt: float, cutoff: float) -> float:
    r = 2.0 * math.pi * cutoff * dt
    return r / (r + 1.0)


class OneEuroFilter:
    """Filter a single channel of (t, x) samples; t in seconds, monotone."""

    def __init__(self, min_cutoff: float = 1.0, beta: float = 0.0,
                 d_cutoff: float = 1.0):
        if min_cutoff <= 0:
            raise ValueError("min_cutoff must be > 0")
        self.min_cutoff = min_cutoff
        self.beta = beta
        self.d_cutoff = d_cutoff
        self.x_prev: float | None = None
        self.dx_prev = 0.0
        self.t_prev = 0.0

    def reset(self) -> None:
        self.x_prev = None
        self.dx_prev = 0.0

    def __call__(self, t: float, x: float) -> float:
        if self.x_prev is None:
            self.x_prev = x
            self.t_prev = t
            return x
        dt = t - self.t_prev
        if dt <= 0:
            return self.x_prev
        a_d = smoothing_factor(dt, self.d_cutoff)
        dx = (x - self.x_prev) / dt
        dx_hat = a_d * dx + (1.0 - a_d) * self.dx_prev
        cutoff = self.min_cutoff + self.beta * abs(dx_hat)
        a = smoothing_factor(dt, cutoff)
        x_hat = a * x + (1.0 - a) * self.x_prev
        self.x_prev = x_hat
        self.dx_prev = dx_hat
        self.t_prev = t
        return x_hat
