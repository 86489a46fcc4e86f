/** Pointing task canvas: pointer, the one active target, click feedback. */

import { DrawCtx, drawBanner } from "./draw.js";
import { TaskStatePointing, TrialMessage } from "./messages.js";
import { Viewport } from "./projection.js";

// Task coordinates are an 800 px square board.
export const BOARD_SIZE = 800;

export const FLASH_LIFETIME_MS = 400;

export interface Flash {
  x: number;
  y: number;
  bornMs: number;
  kind: "click" | "misclick";
}

export function pressFlash(
  state: TaskStatePointing,
  nowMs: number,
): Flash | null {
  if (state.pointer === undefined) return null;
  return { x: state.pointer[0], y: state.pointer[1], bornMs: nowMs, kind: "click" };
}

/** Misclick positions become red flashes once the server reports the
 *  finished trial; the client never judges hits itself. */
export function misclickFlashes(
  trial: TrialMessage["record"],
  nowMs: number,
): Flash[] {
  const raw = trial.misclicks;
  if (!Array.isArray(raw)) return [];
  const out: Flash[] = [];
  for (const entry of raw) {
    if (
      Array.isArray(entry) &&
      entry.length >= 2 &&
      typeof entry[0] === "number" &&
      typeof entry[1] === "number"
    ) {
      out.push({ x: entry[0], y: entry[1], bornMs: nowMs, kind: "misclick" });
    }
  }
  return out;
}

export function liveFlashes(flashes: readonly Flash[], nowMs: number): Flash[] {
  return flashes.filter((f) => nowMs - f.bornMs < FLASH_LIFETIME_MS);
}

export function flashAlpha(flash: Flash, nowMs: number): number {
  const age = (nowMs - flash.bornMs) / FLASH_LIFETIME_MS;
  if (age >= 1) return 0;
  return 1 - age;
}

export function drawPointing(
  ctx: DrawCtx,
  vp: Viewport,
  state: TaskStatePointing | null,
  flashes: readonly Flash[],
  nowMs: number,
  frozen: boolean,
): void {
  ctx.clearRect(0, 0, vp.width, vp.height);
  ctx.fillStyle = "#10101c";
  ctx.fillRect(0, 0, vp.width, vp.height);

  const k = Math.min(vp.width, vp.height) / BOARD_SIZE;
  const toX = (x: number) => x * k;
  const toY = (y: number) => y * k;

  if (state !== null && !state.done && state.target !== undefined) {
    ctx.beginPath();
    ctx.arc(
      toX(state.target.x),
      toY(state.target.y),
      (state.target.width / 2) * k,
      0,
      Math.PI * 2,
    );
    ctx.fillStyle = state.target.is_center ? "#3d6da8" : "#4f9e59";
    ctx.fill();
  }

  for (const flash of flashes) {
    const alpha = flashAlpha(flash, nowMs);
    if (alpha <= 0) continue;
    ctx.save();
    ctx.globalAlpha = alpha;
    ctx.beginPath();
    ctx.arc(toX(flash.x), toY(flash.y), 12 * k, 0, Math.PI * 2);
    ctx.strokeStyle = flash.kind === "misclick" ? "#d0484f" : "#e8e8f0";
    ctx.lineWidth = 2;
    ctx.stroke();
    ctx.restore();
  }

  if (state !== null && !state.done && state.pointer !== undefined) {
    const [px, py] = state.pointer;
    ctx.strokeStyle = "#f2f2f8";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.moveTo(toX(px) - 9, toY(py));
    ctx.lineTo(toX(px) + 9, toY(py));
    ctx.moveTo(toX(px), toY(py) - 9);
    ctx.lineTo(toX(px), toY(py) + 9);
    ctx.stroke();
  }

  if (frozen) {
    drawBanner(ctx, vp.width, vp.height, "disconnected, view frozen");
  } else if (state !== null && state.done) {
    drawBanner(ctx, vp.width, vp.height, "session finished");
  } else if (state !== null && state.halted === true) {
    drawBanner(ctx, vp.width, vp.height, "pointer halted");
  }
}
