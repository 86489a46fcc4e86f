/** Fixed-capacity ring buffer for filtered-signal trace samples. */

export interface TraceSample {
  t_ms: number;
  ax: number;
  ay: number;
  az: number;
  stretch: number;
  button: boolean;
}

// Traces arrive at 30 Hz; 360 slots hold 12 s of history.
export const DEFAULT_CAPACITY = 360;

export class TraceRing {
  private readonly slots: (TraceSample | undefined)[];
  private head = 0; // next write position
  private count = 0;

  constructor(readonly capacity: number = DEFAULT_CAPACITY) {
    if (!Number.isInteger(capacity) || capacity <= 0) {
      throw new RangeError("capacity must be a positive integer");
    }
    this.slots = new Array(capacity);
  }

  get length(): number {
    return this.count;
  }

  push(sample: TraceSample): void {
    this.slots[this.head] = sample;
    this.head = (this.head + 1) % this.capacity;
    if (this.count < this.capacity) this.count += 1;
  }

  latest(): TraceSample | undefined {
    if (this.count === 0) return undefined;
    return this.slots[(this.head - 1 + this.capacity) % this.capacity];
  }

  /** Oldest to newest. */
  toArray(): TraceSample[] {
    const out: TraceSample[] = [];
    const start = (this.head - this.count + this.capacity) % this.capacity;
    for (let i = 0; i < this.count; i += 1) {
      out.push(this.slots[(start + i) % this.capacity] as TraceSample);
    }
    return out;
  }

  /** Samples whose timestamp falls within the trailing window. */
  window(spanMs: number): TraceSample[] {
    const newest = this.latest();
    if (newest === undefined) return [];
    const cutoff = newest.t_ms - spanMs;
    return this.toArray().filter((s) => s.t_ms >= cutoff);
  }

  /** Milliseconds covered by the buffered history. */
  spanMs(): number {
    if (this.count < 2) return 0;
    const all = this.toArray();
    return all[all.length - 1].t_ms - all[0].t_ms;
  }

  clear(): void {
    this.head = 0;
    this.count = 0;
    this.slots.fill(undefined);
  }
}
