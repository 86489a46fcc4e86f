/** Live trace plot for one channel: signal history, threshold lines at
 *  the acked values, the drag ghost, and an out-of-range hint. */

import { ChannelSpec, Ghost, outOfRange } from "./calibration.js";
import { DrawCtx, drawBanner } from "./draw.js";
import { ProfileValues } from "./messages.js";
import { Viewport } from "./projection.js";
import { TraceSample } from "./ring.js";

export const PLOT_WINDOW_MS = 10_000;

export function valueToY(
  value: number,
  range: readonly [number, number],
  height: number,
): number {
  const [lo, hi] = range;
  const frac = (value - lo) / (hi - lo);
  return height - frac * height;
}

export function yToValue(
  y: number,
  range: readonly [number, number],
  height: number,
): number {
  const [lo, hi] = range;
  return lo + ((height - y) / height) * (hi - lo);
}

export function timeToX(
  t: number,
  newestT: number,
  width: number,
  windowMs: number = PLOT_WINDOW_MS,
): number {
  return width - ((newestT - t) / windowMs) * width;
}

export interface TracePlotOptions {
  frozen: boolean;
  ghost: Ghost | null;
  rejectionReason: string | null;
}

export function drawTracePlot(
  ctx: DrawCtx,
  vp: Viewport,
  channel: ChannelSpec,
  samples: readonly TraceSample[],
  profile: ProfileValues | null,
  opts: TracePlotOptions,
): void {
  ctx.clearRect(0, 0, vp.width, vp.height);
  ctx.fillStyle = "#10101c";
  ctx.fillRect(0, 0, vp.width, vp.height);

  const newest = samples.length > 0 ? samples[samples.length - 1].t_ms : 0;

  if (samples.length > 1) {
    ctx.beginPath();
    samples.forEach((s, i) => {
      const x = timeToX(s.t_ms, newest, vp.width);
      const y = valueToY(channel.sample(s), channel.range, vp.height);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.strokeStyle = "#7fb4e0";
    ctx.lineWidth = 1.5;
    ctx.stroke();
  }

  if (profile !== null) {
    // Lines sit at acked values only; an in-flight edit is the ghost.
    for (const field of channel.fields) {
      const value = profile[field];
      if (typeof value !== "number") continue;
      const y = valueToY(value, channel.range, vp.height);
      ctx.beginPath();
      ctx.moveTo(0, y);
      ctx.lineTo(vp.width, y);
      ctx.strokeStyle = "#c8a24c";
      ctx.lineWidth = 1;
      ctx.setLineDash([]);
      ctx.stroke();
      ctx.fillStyle = "#c8a24c";
      ctx.font = "11px system-ui, sans-serif";
      ctx.textAlign = "left";
      ctx.fillText(`${field} ${value}`, 4, y - 3);
    }
  }

  if (opts.ghost !== null && channel.fields.includes(opts.ghost.field)) {
    const y = valueToY(opts.ghost.value, channel.range, vp.height);
    ctx.beginPath();
    ctx.setLineDash([5, 4]);
    ctx.moveTo(0, y);
    ctx.lineTo(vp.width, y);
    ctx.strokeStyle = "#e8e8f0";
    ctx.lineWidth = 1;
    ctx.stroke();
    ctx.setLineDash([]);
  }

  if (outOfRange(samples, channel)) {
    ctx.fillStyle = "#d0484f";
    ctx.font = "12px system-ui, sans-serif";
    ctx.textAlign = "right";
    ctx.fillText("signal out of plotted range", vp.width - 6, 14);
  }

  if (opts.rejectionReason !== null) {
    ctx.fillStyle = "#d0484f";
    ctx.font = "12px system-ui, sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(`rejected: ${opts.rejectionReason}`, 4, vp.height - 6);
  }

  if (opts.frozen) {
    drawBanner(ctx, vp.width, vp.height, "disconnected, view frozen");
  }
}
