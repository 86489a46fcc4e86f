/** First-person projection of the unit reach cube onto a 2D canvas.
 *
 * The camera sits in front of the cube face y = 0 looking along +y, so x
 * maps to screen right, z to screen up, and y is depth. Perspective only;
 * no rotation, matching a head-on operator view.
 */

export type Vec3 = readonly [number, number, number];

export const CUBE_SIDE = 1.0;

export interface Viewport {
  width: number;
  height: number;
}

export interface Projected {
  x: number;
  y: number;
  /** Pixels per world unit at this depth; shrinks as y grows. */
  scale: number;
}

// Camera distance from the near face, world units. Chosen so the far
// face still fills most of the viewport and nothing projects outside it.
const CAMERA_DISTANCE = 1.6;
const NEAR_FILL = 0.9;

export function clampToCube(p: Vec3): Vec3 {
  const clamp = (v: number) =>
    v < 0 ? 0 : v > CUBE_SIDE ? CUBE_SIDE : v;
  return [clamp(p[0]), clamp(p[1]), clamp(p[2])];
}

export function project(p: Vec3, vp: Viewport): Projected {
  const side = Math.min(vp.width, vp.height);
  // Pinhole model: the near face (depth 0) spans NEAR_FILL of the view.
  const focal = side * NEAR_FILL;
  const scale = (focal * CAMERA_DISTANCE) / (CAMERA_DISTANCE + p[1]);
  return {
    x: vp.width / 2 + (p[0] - CUBE_SIDE / 2) * scale,
    y: vp.height / 2 - (p[2] - CUBE_SIDE / 2) * scale,
    scale,
  };
}

/** The twelve cube edges, for the wireframe workspace box. */
export function cubeEdges(): Array<[Vec3, Vec3]> {
  const edges: Array<[Vec3, Vec3]> = [];
  const c = CUBE_SIDE;
  for (const y of [0, c]) {
    edges.push([[0, y, 0], [c, y, 0]]);
    edges.push([[c, y, 0], [c, y, c]]);
    edges.push([[c, y, c], [0, y, c]]);
    edges.push([[0, y, c], [0, y, 0]]);
  }
  for (const [x, z] of [[0, 0], [c, 0], [c, c], [0, c]] as const) {
    edges.push([[x, 0, z], [x, c, z]]);
  }
  return edges;
}

/** Depth cues for one point: a drop line to the floor and a floor cross
 *  at its foot, so the eye can separate height from distance. */
export function guideLines(p: Vec3): Array<[Vec3, Vec3]> {
  const [x, y] = p;
  const foot: Vec3 = [x, y, 0];
  const arm = CUBE_SIDE * 0.06;
  return [
    [p, foot],
    [[x - arm, y, 0], [x + arm, y, 0]],
    [[x, y - arm, 0], [x, y + arm, 0]],
  ];
}

export function clampFraction(v: number): number {
  return v < 0 ? 0 : v > 1 ? 1 : v;
}
