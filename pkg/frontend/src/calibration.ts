/** Calibration panel model: trace channels, threshold drags, range hints.
 *
 * Threshold lines always render the last acknowledged profile value. A
 * drag shows a separate ghost handle; confirming it sends a calibration
 * update, and the line itself moves only when the ack comes back. A
 * rejected update clears the ghost, which snaps the handle to the line.
 */

import { ProfileValues } from "./messages.js";
import { TraceSample } from "./ring.js";

export interface ChannelSpec {
  id: "stretch" | "ax" | "ay";
  label: string;
  /** Profile fields drawn as draggable threshold lines on this channel. */
  fields: readonly string[];
  /** Plotted value range, in the same units as the samples. */
  range: readonly [number, number];
  sample: (s: TraceSample) => number;
}

export const CHANNELS: readonly ChannelSpec[] = [
  {
    id: "stretch",
    label: "cheek stretch",
    fields: [
      "stretch_press",
      "stretch_release",
      "stretch_release_down",
      "stretch_press_down",
    ],
    range: [0, 1100],
    sample: (s) => s.stretch,
  },
  {
    id: "ax",
    label: "tilt x",
    fields: ["tilt_pos_x", "tilt_neg_x"],
    range: [-1100, 1100],
    sample: (s) => s.ax,
  },
  {
    id: "ay",
    label: "tilt y",
    fields: ["tilt_pos_y", "tilt_neg_y"],
    range: [-1100, 1100],
    sample: (s) => s.ay,
  },
];

export const SPEED_FIELDS: readonly string[] = ["speed_xy", "speed_z"];

export function channelForField(field: string): ChannelSpec | undefined {
  return CHANNELS.find((c) => c.fields.includes(field));
}

export interface Ghost {
  field: string;
  value: number;
  /** Set once the drag ended and the update is waiting for its ack. */
  requestId: number | null;
}

export class ThresholdDrag {
  private ghostState: Ghost | null = null;

  constructor(
    private readonly sendUpdate: (updates: ProfileValues) => number,
  ) {}

  ghost(): Ghost | null {
    return this.ghostState;
  }

  /** The value a threshold line renders at: acked profile, nothing else. */
  displayed(profile: ProfileValues | null, field: string): number | null {
    if (profile === null) return null;
    const value = profile[field];
    return typeof value === "number" ? value : null;
  }

  begin(field: string, fromValue: number): void {
    this.ghostState = { field, value: fromValue, requestId: null };
  }

  move(value: number): void {
    if (this.ghostState === null || this.ghostState.requestId !== null) return;
    this.ghostState = { ...this.ghostState, value };
  }

  /** Release the handle: send the edit, keep the ghost until the ack. */
  end(): number | null {
    if (this.ghostState === null || this.ghostState.requestId !== null) {
      return null;
    }
    const requestId = this.sendUpdate({
      [this.ghostState.field]: this.ghostState.value,
    });
    this.ghostState = { ...this.ghostState, requestId };
    return requestId;
  }

  cancel(): void {
    this.ghostState = null;
  }

  /** Ack for this ghost's request settles or snaps back the handle. */
  onAck(requestId: number | null): void {
    if (
      this.ghostState !== null &&
      this.ghostState.requestId !== null &&
      this.ghostState.requestId === requestId
    ) {
      this.ghostState = null;
    }
  }
}

/** True when recent samples leave the plotted range, so the panel can
 *  suggest rescaling instead of silently clipping the trace. */
export function outOfRange(
  samples: readonly TraceSample[],
  channel: ChannelSpec,
): boolean {
  const [lo, hi] = channel.range;
  return samples.some((s) => {
    const v = channel.sample(s);
    return v < lo || v > hi;
  });
}
