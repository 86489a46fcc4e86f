import { describe, expect, it } from "vitest";

import { TraceRing, TraceSample } from "../src/ring.js";

function sample(t_ms: number, stretch = 0): TraceSample {
  return { t_ms, ax: 0, ay: 0, az: 0, stretch, button: false };
}

describe("TraceRing", () => {
  it("holds at least ten seconds of thirty hertz history", () => {
    const ring = new TraceRing();
    // 30 Hz spacing; push well past capacity so the buffer is full.
    for (let i = 0; i < 500; i += 1) ring.push(sample(i * (1000 / 30)));
    expect(ring.length).toBe(ring.capacity);
    expect(ring.spanMs()).toBeGreaterThanOrEqual(10_000);
  });

  it("keeps samples in arrival order across wraparound", () => {
    const ring = new TraceRing(4);
    for (let i = 0; i < 7; i += 1) ring.push(sample(i));
    expect(ring.toArray().map((s) => s.t_ms)).toEqual([3, 4, 5, 6]);
    expect(ring.latest()?.t_ms).toBe(6);
  });

  it("windows by trailing time span", () => {
    const ring = new TraceRing(100);
    for (let i = 0; i <= 50; i += 1) ring.push(sample(i * 100));
    const recent = ring.window(1000);
    expect(recent[0].t_ms).toBe(4000);
    expect(recent[recent.length - 1].t_ms).toBe(5000);
  });

  it("reports an empty window and zero span when empty", () => {
    const ring = new TraceRing(8);
    expect(ring.window(1000)).toEqual([]);
    expect(ring.spanMs()).toBe(0);
    expect(ring.latest()).toBeUndefined();
  });

  it("clears back to empty", () => {
    const ring = new TraceRing(4);
    ring.push(sample(1));
    ring.push(sample(2));
    ring.clear();
    expect(ring.length).toBe(0);
    expect(ring.toArray()).toEqual([]);
  });

  it("rejects a non-positive capacity", () => {
    expect(() => new TraceRing(0)).toThrow(RangeError);
    expect(() => new TraceRing(2.5)).toThrow(RangeError);
  });
});
