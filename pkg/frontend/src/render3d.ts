/** Reach scene: workspace box, start and target spheres, end-effector
 *  block, white depth guide lines, dwell progress ring. */

import { DrawCtx, drawBanner } from "./draw.js";
import { TaskStateArm } from "./messages.js";
import {
  Viewport,
  clampFraction,
  clampToCube,
  cubeEdges,
  guideLines,
  project,
} from "./projection.js";

const GUIDE_COLOR = "#ffffff";

function strokeSegments(
  ctx: DrawCtx,
  vp: Viewport,
  segments: ReadonlyArray<readonly [readonly [number, number, number], readonly [number, number, number]]>,
): void {
  ctx.beginPath();
  for (const [a, b] of segments) {
    const pa = project(a, vp);
    const pb = project(b, vp);
    ctx.moveTo(pa.x, pa.y);
    ctx.lineTo(pb.x, pb.y);
  }
  ctx.stroke();
}

export function drawArmScene(
  ctx: DrawCtx,
  vp: Viewport,
  state: TaskStateArm | null,
  frozen: boolean,
): void {
  ctx.clearRect(0, 0, vp.width, vp.height);
  ctx.fillStyle = "#0c0c16";
  ctx.fillRect(0, 0, vp.width, vp.height);

  ctx.strokeStyle = "#34344a";
  ctx.lineWidth = 1;
  strokeSegments(ctx, vp, cubeEdges());

  if (state === null || state.done) {
    if (frozen) {
      drawBanner(ctx, vp.width, vp.height, "disconnected, view frozen");
    } else if (state !== null && state.done) {
      drawBanner(ctx, vp.width, vp.height, "session finished");
    }
    return;
  }

  const endpoint = clampToCube(state.endpoint ?? [0.5, 0.5, 0.5]);
  const spheres = [
    { spec: state.start, active: state.phase === "back", color: "#3d6da8" },
    { spec: state.target, active: state.phase === "out", color: "#4f9e59" },
  ];

  ctx.strokeStyle = GUIDE_COLOR;
  ctx.lineWidth = 1;
  for (const { spec } of spheres) {
    if (spec !== undefined) strokeSegments(ctx, vp, guideLines(spec.center));
  }
  strokeSegments(ctx, vp, guideLines(endpoint));

  for (const { spec, active, color } of spheres) {
    if (spec === undefined) continue;
    const p = project(spec.center, vp);
    ctx.beginPath();
    ctx.arc(p.x, p.y, spec.radius * p.scale, 0, Math.PI * 2);
    ctx.fillStyle = color;
    ctx.save();
    ctx.globalAlpha = active ? 0.95 : 0.35;
    ctx.fill();
    ctx.restore();

    if (active) {
      const progress = clampFraction(state.dwell_progress ?? 0);
      if (progress > 0) {
        ctx.beginPath();
        ctx.arc(
          p.x,
          p.y,
          spec.radius * p.scale + 6,
          -Math.PI / 2,
          -Math.PI / 2 + progress * Math.PI * 2,
        );
        ctx.strokeStyle = "#e8c25a";
        ctx.lineWidth = 3;
        ctx.stroke();
      }
    }
  }

  const ep = project(endpoint, vp);
  const half = 0.02 * ep.scale;
  ctx.fillStyle = "#f2f2f8";
  ctx.fillRect(ep.x - half, ep.y - half, half * 2, half * 2);

  if (frozen) {
    drawBanner(ctx, vp.width, vp.height, "disconnected, view frozen");
  }
}
