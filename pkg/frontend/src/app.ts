/** Browser glue: socket lifecycle, canvases, pointer-driven threshold
 *  drags. All session truth lives in SessionView; this file only routes
 *  messages and renders. */

import { CHANNELS, ChannelSpec, ThresholdDrag } from "./calibration.js";
import { DrawCtx } from "./draw.js";
import {
  parseServerMessage,
  startMessage,
  stopMessage,
} from "./messages.js";
import {
  Flash,
  drawPointing,
  liveFlashes,
  misclickFlashes,
  pressFlash,
} from "./render2d.js";
import { drawArmScene } from "./render3d.js";
import { SessionView } from "./state.js";
import { PLOT_WINDOW_MS, drawTracePlot, valueToY, yToValue } from "./traces.js";

const DEFAULT_CONFIG = {
  mode: "pointing",
  source: "agent",
  seed: 7,
  runs: 1,
  trials_per_run: 10,
  pace: "real",
};

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function ctx2d(canvas: HTMLCanvasElement): DrawCtx {
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("canvas 2d context unavailable");
  return ctx;
}

class App {
  private socket: WebSocket | null = null;
  private view: SessionView;
  private drag: ThresholdDrag;
  private flashes: Flash[] = [];
  private ackSentAt = new Map<number, number>();
  private lastAckMs: number | null = null;

  private readonly urlInput = byId<HTMLInputElement>("url");
  private readonly configInput = byId<HTMLTextAreaElement>("config");
  private readonly statusLine = byId<HTMLElement>("status");
  private readonly noticeLine = byId<HTMLElement>("notice");
  private readonly taskCanvas = byId<HTMLCanvasElement>("task");
  private readonly traceCanvases = new Map<string, HTMLCanvasElement>(
    CHANNELS.map((c) => [c.id, byId<HTMLCanvasElement>(`trace-${c.id}`)]),
  );

  constructor() {
    this.view = new SessionView(() => undefined);
    this.drag = new ThresholdDrag((updates) => this.view.sendCalibUpdate(updates));
    byId<HTMLButtonElement>("start").addEventListener("click", () => this.start());
    byId<HTMLButtonElement>("stop").addEventListener("click", () => this.stop());
    byId<HTMLButtonElement>("apply-speeds").addEventListener("click", () =>
      this.applySpeeds(),
    );
    this.configInput.value = JSON.stringify(DEFAULT_CONFIG, null, 2);
    for (const channel of CHANNELS) {
      this.bindDrag(channel);
    }
    requestAnimationFrame(() => this.render());
  }

  private start(): void {
    this.stop();
    let config: Record<string, unknown>;
    try {
      config = JSON.parse(this.configInput.value) as Record<string, unknown>;
    } catch (exc) {
      this.noticeLine.textContent = `config is not valid JSON: ${String(exc)}`;
      return;
    }
    const socket = new WebSocket(this.urlInput.value);
    this.socket = socket;
    this.flashes = [];
    this.ackSentAt.clear();
    this.lastAckMs = null;
    this.view = new SessionView((payload) => socket.send(payload));
    this.view.markConnecting();
    this.drag = new ThresholdDrag((updates) => {
      const requestId = this.view.sendCalibUpdate(updates);
      this.ackSentAt.set(requestId, performance.now());
      return requestId;
    });
    socket.addEventListener("open", () => {
      this.view.markOpen();
      socket.send(startMessage(config));
      // Empty update round-trips the profile in force so the threshold
      // lines have an acked value to sit at.
      this.ackSentAt.set(this.view.sendCalibUpdate({}), performance.now());
    });
    socket.addEventListener("message", (ev) => this.onMessage(String(ev.data)));
    socket.addEventListener("close", () => this.view.markClosed());
    socket.addEventListener("error", () => this.view.markClosed());
  }

  private stop(): void {
    if (this.socket !== null && this.socket.readyState === WebSocket.OPEN) {
      this.socket.send(stopMessage());
      this.socket.close();
    }
    this.socket = null;
  }

  private applySpeeds(): void {
    const xy = Number(byId<HTMLInputElement>("speed-xy").value);
    const z = Number(byId<HTMLInputElement>("speed-z").value);
    const updates: Record<string, number> = {};
    if (Number.isFinite(xy)) updates.speed_xy = xy;
    if (Number.isFinite(z)) updates.speed_z = z;
    if (Object.keys(updates).length > 0) {
      this.ackSentAt.set(this.view.sendCalibUpdate(updates), performance.now());
    }
  }

  private onMessage(raw: string): void {
    let msg;
    try {
      msg = parseServerMessage(raw);
    } catch (exc) {
      this.noticeLine.textContent = `bad frame: ${String(exc)}`;
      return;
    }
    const now = performance.now();
    if (msg.type === "event" && msg.event.type === "press") {
      const state = this.view.taskState;
      if (state !== null && state.mode === "pointing" && !state.done) {
        const flash = pressFlash(state, now);
        if (flash !== null) this.flashes.push(flash);
      }
    }
    if (msg.type === "trial") {
      this.flashes.push(...misclickFlashes(msg.record, now));
    }
    if (msg.type === "calib_ack") {
      this.drag.onAck(msg.request_id ?? null);
      const sentAt = msg.request_id !== undefined
        ? this.ackSentAt.get(msg.request_id)
        : undefined;
      if (sentAt !== undefined) {
        this.lastAckMs = now - sentAt;
        if (msg.request_id !== undefined) this.ackSentAt.delete(msg.request_id);
      }
    }
    this.view.applyServer(msg);
  }

  private bindDrag(channel: ChannelSpec): void {
    const canvas = this.traceCanvases.get(channel.id);
    if (canvas === undefined) return;
    const valueAt = (ev: PointerEvent) => {
      const rect = canvas.getBoundingClientRect();
      const y = ((ev.clientY - rect.top) / rect.height) * canvas.height;
      return yToValue(y, channel.range, canvas.height);
    };
    canvas.addEventListener("pointerdown", (ev) => {
      const profile = this.view.profile;
      if (profile === null) return;
      const rect = canvas.getBoundingClientRect();
      const y = ((ev.clientY - rect.top) / rect.height) * canvas.height;
      // Grab the nearest threshold line within 10 px.
      let best: { field: string; dist: number } | null = null;
      for (const field of channel.fields) {
        const value = profile[field];
        if (typeof value !== "number") continue;
        const dist = Math.abs(valueToY(value, channel.range, canvas.height) - y);
        if (dist <= 10 && (best === null || dist < best.dist)) {
          best = { field, dist };
        }
      }
      if (best === null) return;
      canvas.setPointerCapture(ev.pointerId);
      this.drag.begin(best.field, profile[best.field]);
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (this.drag.ghost() !== null) this.drag.move(valueAt(ev));
    });
    canvas.addEventListener("pointerup", () => {
      this.drag.end();
    });
  }

  private render(): void {
    const now = performance.now();
    this.flashes = liveFlashes(this.flashes, now);

    const taskCtx = ctx2d(this.taskCanvas);
    const vp = { width: this.taskCanvas.width, height: this.taskCanvas.height };
    const state = this.view.taskState;
    if (state !== null && state.mode === "arm3d") {
      drawArmScene(taskCtx, vp, state, this.view.frozen);
    } else {
      drawPointing(
        taskCtx,
        vp,
        state !== null && state.mode === "pointing" ? state : null,
        this.flashes,
        now,
        this.view.frozen,
      );
    }

    for (const channel of CHANNELS) {
      const canvas = this.traceCanvases.get(channel.id);
      if (canvas === undefined) continue;
      drawTracePlot(
        ctx2d(canvas),
        { width: canvas.width, height: canvas.height },
        channel,
        this.view.traces.window(PLOT_WINDOW_MS),
        this.view.profile,
        {
          frozen: this.view.frozen,
          ghost: this.drag.ghost(),
          rejectionReason: this.view.rejection?.reason ?? null,
        },
      );
    }

    this.statusLine.textContent = this.statusText();
    this.noticeLine.textContent = this.view.lastError ?? this.noticeLine.textContent;
    requestAnimationFrame(() => this.render());
  }

  private statusText(): string {
    const parts: string[] = [this.view.connection];
    const state = this.view.taskState;
    if (state !== null) {
      parts.push(`trial ${state.trial + 1}/${state.trials_total}`);
      parts.push(`states ${this.view.taskStateCount()}`);
      parts.push(`coverage ${(this.view.coverage() * 100).toFixed(1)}%`);
    }
    parts.push(`trials logged ${this.view.trials.length}`);
    parts.push(`events ${this.view.eventCount}`);
    if (this.lastAckMs !== null) {
      parts.push(`last ack ${this.lastAckMs.toFixed(0)} ms`);
    }
    if (this.view.summary !== null) {
      parts.push(`ended: ${JSON.stringify(this.view.summary)}`);
    }
    return parts.join("  |  ");
  }
}

new App();
