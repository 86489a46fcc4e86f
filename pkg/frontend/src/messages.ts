/** JSON message schema of the session service channel. */

export type ProfileValues = Record<string, number>;

export interface PointingTargetState {
  x: number;
  y: number;
  width: number;
  is_center: boolean;
}

export interface TaskStatePointing {
  type: "task_state";
  mode: "pointing";
  seq: number;
  t_ms: number;
  done: boolean;
  trial: number;
  trials_total: number;
  pointer?: [number, number];
  target?: PointingTargetState;
  halted?: boolean;
}

export interface SphereState {
  center: [number, number, number];
  radius: number;
}

export interface TaskStateArm {
  type: "task_state";
  mode: "arm3d";
  seq: number;
  t_ms: number;
  done: boolean;
  trial: number;
  trials_total: number;
  phase?: "out" | "back";
  endpoint?: [number, number, number];
  target?: SphereState;
  start?: SphereState;
  dwell_progress?: number;
}

export type TaskState = TaskStatePointing | TaskStateArm;

export interface TraceMessage {
  type: "trace";
  t_ms: number;
  ax: number;
  ay: number;
  az: number;
  stretch: number;
  button: boolean;
  mode: string;
}

export interface EventMessage {
  type: "event";
  event: { type: string; t_ms: number; [key: string]: unknown };
}

export interface TrialMessage {
  type: "trial";
  record: Record<string, unknown>;
}

export interface CalibAck {
  type: "calib_ack";
  ok: boolean;
  request_id?: number;
  profile?: ProfileValues;
  reason?: string;
}

export interface SessionEnd {
  type: "session_end";
  summary: Record<string, unknown>;
}

export interface ErrorMessage {
  type: "error";
  reason: string;
}

export type ServerMessage =
  | TaskState
  | TraceMessage
  | EventMessage
  | TrialMessage
  | CalibAck
  | SessionEnd
  | ErrorMessage;

export class MessageError extends Error {}

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function num(obj: Record<string, unknown>, key: string): number {
  const v = obj[key];
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new MessageError(`field ${key} is not a finite number`);
  }
  return v;
}

function numArray(v: unknown, length: number, what: string): number[] {
  if (!Array.isArray(v) || v.length !== length ||
      !v.every((x) => typeof x === "number" && Number.isFinite(x))) {
    throw new MessageError(`${what} is not a ${length}-vector`);
  }
  return v as number[];
}

function sphere(v: unknown, what: string): SphereState {
  if (!isRecord(v)) throw new MessageError(`${what} is not an object`);
  const center = numArray(v.center, 3, `${what}.center`);
  return {
    center: [center[0], center[1], center[2]],
    radius: num(v, "radius"),
  };
}

function profileValues(v: unknown): ProfileValues {
  if (!isRecord(v)) throw new MessageError("profile is not an object");
  const out: ProfileValues = {};
  for (const [key, raw] of Object.entries(v)) {
    if (typeof raw !== "number" || !Number.isFinite(raw)) {
      throw new MessageError(`profile field ${key} is not a finite number`);
    }
    out[key] = raw;
  }
  return out;
}

function taskState(obj: Record<string, unknown>): TaskState {
  const base = {
    type: "task_state" as const,
    seq: num(obj, "seq"),
    t_ms: num(obj, "t_ms"),
    done: obj.done === true,
    trial: num(obj, "trial"),
    trials_total: num(obj, "trials_total"),
  };
  if (obj.mode === "pointing") {
    const msg: TaskStatePointing = { ...base, mode: "pointing" };
    if (!base.done) {
      const pointer = numArray(obj.pointer, 2, "pointer");
      msg.pointer = [pointer[0], pointer[1]];
      const t = obj.target;
      if (!isRecord(t)) throw new MessageError("target is not an object");
      msg.target = {
        x: num(t, "x"),
        y: num(t, "y"),
        width: num(t, "width"),
        is_center: t.is_center === true,
      };
      msg.halted = obj.halted === true;
    }
    return msg;
  }
  if (obj.mode === "arm3d") {
    const msg: TaskStateArm = { ...base, mode: "arm3d" };
    if (!base.done) {
      if (obj.phase !== "out" && obj.phase !== "back") {
        throw new MessageError(`unknown arm phase ${String(obj.phase)}`);
      }
      msg.phase = obj.phase;
      const ep = numArray(obj.endpoint, 3, "endpoint");
      msg.endpoint = [ep[0], ep[1], ep[2]];
      msg.target = sphere(obj.target, "target");
      msg.start = sphere(obj.start, "start");
      msg.dwell_progress = num(obj, "dwell_progress");
    }
    return msg;
  }
  throw new MessageError(`unknown task mode ${String(obj.mode)}`);
}

/** Parse one incoming frame; throws MessageError on anything malformed. */
export function parseServerMessage(raw: string): ServerMessage {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    throw new MessageError("frame is not valid JSON");
  }
  if (!isRecord(data)) throw new MessageError("frame is not an object");
  switch (data.type) {
    case "task_state":
      return taskState(data);
    case "trace":
      return {
        type: "trace",
        t_ms: num(data, "t_ms"),
        ax: num(data, "ax"),
        ay: num(data, "ay"),
        az: num(data, "az"),
        stretch: num(data, "stretch"),
        button: data.button === true,
        mode: String(data.mode ?? ""),
      };
    case "event": {
      const ev = data.event;
      if (!isRecord(ev) || typeof ev.type !== "string") {
        throw new MessageError("event payload is malformed");
      }
      return {
        type: "event",
        event: { ...ev, type: ev.type, t_ms: num(ev, "t_ms") },
      };
    }
    case "trial": {
      if (!isRecord(data.record)) throw new MessageError("trial record is malformed");
      return { type: "trial", record: data.record };
    }
    case "calib_ack": {
      const msg: CalibAck = { type: "calib_ack", ok: data.ok === true };
      if (typeof data.request_id === "number") msg.request_id = data.request_id;
      if (data.profile !== undefined) msg.profile = profileValues(data.profile);
      if (typeof data.reason === "string") msg.reason = data.reason;
      return msg;
    }
    case "session_end": {
      if (!isRecord(data.summary)) throw new MessageError("summary is malformed");
      return { type: "session_end", summary: data.summary };
    }
    case "error":
      return { type: "error", reason: String(data.reason ?? "unknown error") };
    default:
      throw new MessageError(`unknown message type ${String(data.type)}`);
  }
}

export function startMessage(config: Record<string, unknown>): string {
  return JSON.stringify({ type: "start", config });
}

export function calibUpdateMessage(
  updates: ProfileValues,
  requestId: number,
): string {
  return JSON.stringify({
    type: "calib_update",
    request_id: requestId,
    updates,
  });
}

export function stopMessage(): string {
  return JSON.stringify({ type: "stop" });
}
