import { describe, expect, it } from "vitest";

import type { Snapshot } from "../src/protocol.js";
import { initialState, onClose, onOpen, onServerMessage } from "../src/state.js";

const snapshot: Snapshot = {
  type: "snapshot",
  t_ms: 100,
  mode: "AWAITING_INPUT",
  lcd: ["Enter Amount    ", "                ", "                ", "                "],
  motor: false,
  dispensed_ul: 0,
  tank_ul: 10_000_000,
  timescale: 1,
};

describe("panel state", () => {
  it("starts disconnected with nothing to show", () => {
    expect(initialState.connected).toBe(false);
    expect(initialState.snapshot).toBeNull();
  });

  it("tracks the connection lifecycle", () => {
    let state = onOpen(initialState);
    expect(state.connected).toBe(true);
    state = onClose(state);
    expect(state.connected).toBe(false);
  });

  it("keeps only the latest snapshot", () => {
    let state = onServerMessage(onOpen(initialState), snapshot);
    const later: Snapshot = { ...snapshot, t_ms: 2000, dispensed_ul: 77 };
    state = onServerMessage(state, later);
    expect(state.snapshot).toEqual(later);
  });

  it("keeps the stale snapshot across a drop", () => {
    let state = onServerMessage(onOpen(initialState), snapshot);
    state = onClose(state);
    expect(state.connected).toBe(false);
    expect(state.snapshot).toEqual(snapshot);
  });

  it("records the last error and clears it on the next snapshot", () => {
    let state = onServerMessage(onOpen(initialState), {
      type: "error",
      message: "unknown key label: Q",
    });
    expect(state.lastError).toContain("unknown key label");
    state = onServerMessage(state, snapshot);
    expect(state.lastError).toBeNull();
  });

  it("does not mutate the previous state object", () => {
    const before = onOpen(initialState);
    onServerMessage(before, snapshot);
    expect(before.snapshot).toBeNull();
  });
});
