import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { HoldGate, KEYPAD_LAYOUT, MIN_HOLD_MS } from "../src/keypad.js";
import type { KeyEdge } from "../src/keypad.js";

describe("keypad layout", () => {
  it("matches the device matrix", () => {
    const labels = KEYPAD_LAYOUT.map((row) => row.map((cap) => cap.label));
    expect(labels).toEqual([
      ["1", "2", "3", "A"],
      ["4", "5", "6", "B"],
      ["7", "8", "9", "C"],
      ["*", "0", "#", "D"],
    ]);
  });
});

describe("HoldGate", () => {
  let sent: Array<[string, KeyEdge]>;
  let gate: HoldGate;

  beforeEach(() => {
    vi.useFakeTimers();
    sent = [];
    gate = new HoldGate((label, edge) => sent.push([label, edge]));
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("sends the down edge immediately", () => {
    gate.press("5");
    expect(sent).toEqual([["5", "key_down"]]);
  });

  it("passes a long press straight through", () => {
    gate.press("5");
    vi.advanceTimersByTime(MIN_HOLD_MS + 20);
    gate.release("5");
    expect(sent).toEqual([
      ["5", "key_down"],
      ["5", "key_up"],
    ]);
  });

  it("stretches a click shorter than the minimum hold", () => {
    gate.press("5");
    vi.advanceTimersByTime(5);
    gate.release("5");
    expect(sent).toEqual([["5", "key_down"]]);

    vi.advanceTimersByTime(MIN_HOLD_MS - 5 - 1);
    expect(sent).toHaveLength(1);
    vi.advanceTimersByTime(1);
    expect(sent).toEqual([
      ["5", "key_down"],
      ["5", "key_up"],
    ]);
  });

  it("flushes a queued release before a fast re-press", () => {
    gate.press("5");
    gate.release("5");
    gate.press("5");
    vi.advanceTimersByTime(MIN_HOLD_MS * 3);
    gate.release("5");
    expect(sent).toEqual([
      ["5", "key_down"],
      ["5", "key_up"],
      ["5", "key_down"],
      ["5", "key_up"],
    ]);
  });

  it("ignores a release without a press", () => {
    gate.release("9");
    expect(sent).toEqual([]);
  });

  it("ignores a repeated press while the key is held", () => {
    gate.press("5");
    gate.press("5");
    expect(sent).toEqual([["5", "key_down"]]);
  });

  it("tracks separate keys independently", () => {
    gate.press("1");
    vi.advanceTimersByTime(2);
    gate.press("2");
    gate.release("1");
    vi.advanceTimersByTime(MIN_HOLD_MS * 2);
    gate.release("2");
    const ups = sent.filter(([, edge]) => edge === "key_up");
    expect(ups).toEqual([
      ["1", "key_up"],
      ["2", "key_up"],
    ]);
  });

  it("clear drops held keys and pending releases silently", () => {
    gate.press("5");
    gate.release("5");
    gate.clear();
    vi.advanceTimersByTime(MIN_HOLD_MS * 4);
    expect(sent).toEqual([["5", "key_down"]]);
  });
});
