/** Client-side mirror of one live session.
 *
 * The view never computes task outcomes locally. Trial truth, target
 * geometry, and threshold values all come from server messages; the only
 * state added here is bookkeeping (connection, coverage, pending edits).
 */

import {
  CalibAck,
  ProfileValues,
  ServerMessage,
  SessionEnd,
  TaskState,
  calibUpdateMessage,
} from "./messages.js";
import { TraceRing } from "./ring.js";

export type Connection = "idle" | "connecting" | "open" | "closed";

export interface PendingEdit {
  requestId: number;
  updates: ProfileValues;
}

export interface Rejection {
  requestId: number | null;
  reason: string;
}

export type SendFn = (payload: string) => void;

export class SessionView {
  connection: Connection = "idle";
  /** Last acknowledged profile; null until the first ack arrives. */
  profile: ProfileValues | null = null;
  taskState: TaskState | null = null;
  trials: Record<string, unknown>[] = [];
  summary: SessionEnd["summary"] | null = null;
  lastError: string | null = null;
  rejection: Rejection | null = null;
  traces = new TraceRing();
  eventCount = 0;

  private pending = new Map<number, PendingEdit>();
  private nextRequestId = 0;
  private seqSeen = new Set<number>();
  private seqMax = 0;

  constructor(private readonly send: SendFn) {}

  markConnecting(): void {
    this.connection = "connecting";
  }

  markOpen(): void {
    this.connection = "open";
  }

  markClosed(): void {
    this.connection = "closed";
  }

  get frozen(): boolean {
    return this.connection === "closed";
  }

  /** Fraction of task-state sequence numbers this client observed. */
  coverage(): number {
    if (this.seqMax === 0) return 1;
    return this.seqSeen.size / this.seqMax;
  }

  taskStateCount(): number {
    return this.seqSeen.size;
  }

  pendingEdits(): PendingEdit[] {
    return [...this.pending.values()];
  }

  /** Queue a calibration edit; the displayed profile moves only on ack. */
  sendCalibUpdate(updates: ProfileValues): number {
    const requestId = this.nextRequestId;
    this.nextRequestId += 1;
    this.pending.set(requestId, { requestId, updates });
    this.send(calibUpdateMessage(updates, requestId));
    return requestId;
  }

  applyServer(msg: ServerMessage): void {
    switch (msg.type) {
      case "task_state":
        this.applyTaskState(msg);
        return;
      case "trace":
        this.traces.push({
          t_ms: msg.t_ms,
          ax: msg.ax,
          ay: msg.ay,
          az: msg.az,
          stretch: msg.stretch,
          button: msg.button,
        });
        return;
      case "event":
        this.eventCount += 1;
        return;
      case "trial":
        this.trials.push(msg.record);
        return;
      case "calib_ack":
        this.applyAck(msg);
        return;
      case "session_end":
        this.summary = msg.summary;
        return;
      case "error":
        this.lastError = msg.reason;
        return;
    }
  }

  private applyTaskState(msg: TaskState): void {
    // Whole-state replacement keeps exactly one active target on screen.
    this.taskState = msg;
    this.seqSeen.add(msg.seq);
    if (msg.seq > this.seqMax) this.seqMax = msg.seq;
  }

  private applyAck(msg: CalibAck): void {
    const requestId = msg.request_id ?? null;
    if (requestId !== null) this.pending.delete(requestId);
    if (msg.profile !== undefined) {
      // Acks carry the profile in force, on rejection too, so this stays
      // the only assignment and the display never shows a local edit.
      this.profile = msg.profile;
    }
    if (msg.ok) {
      // A fresh successful ack supersedes any stale rejection notice.
      this.rejection = null;
    } else {
      this.rejection = { requestId, reason: msg.reason ?? "update rejected" };
    }
  }

  clearRejection(): void {
    this.rejection = null;
  }
}
