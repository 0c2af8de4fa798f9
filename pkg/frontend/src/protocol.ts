// Wire types for the bridge websocket, plus a defensive parser so a
// malformed frame can never take the panel down.

export type DeviceMode = "AWAITING_INPUT" | "DISPENSING";

export interface Snapshot {
  type: "snapshot";
  t_ms: number;
  mode: DeviceMode;
  lcd: [string, string, string, string];
  motor: boolean;
  dispensed_ul: number;
  target_ul?: number | null;
  tank_ul: number;
  timescale: number;
}

export interface ServerError {
  type: "error";
  message: string;
}

export type ServerMessage = Snapshot | ServerError;

export interface KeyDown {
  type: "key_down";
  key: string;
}

export interface KeyUp {
  type: "key_up";
  key: string;
}

export interface SetTimescale {
  type: "set_timescale";
  factor: number;
}

export interface Reset {
  type: "reset";
}

export type ClientMessage = KeyDown | KeyUp | SetTimescale | Reset;

export const keyDown = (key: string): KeyDown => ({ type: "key_down", key });
export const keyUp = (key: string): KeyUp => ({ type: "key_up", key });
export const setTimescale = (factor: number): SetTimescale => ({
  type: "set_timescale",
  factor,
});
export const reset = (): Reset => ({ type: "reset" });

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null;
}

function isLcdRows(value: unknown): value is [string, string, string, string] {
  return (
    Array.isArray(value) &&
    value.length === 4 &&
    value.every((row) => typeof row === "string")
  );
}

function isSnapshot(value: Record<string, unknown>): value is Snapshot & Record<string, unknown> {
  return (
    typeof value.t_ms === "number" &&
    (value.mode === "AWAITING_INPUT" || value.mode === "DISPENSING") &&
    isLcdRows(value.lcd) &&
    typeof value.motor === "boolean" &&
    typeof value.dispensed_ul === "number" &&
    typeof value.tank_ul === "number" &&
    typeof value.timescale === "number" &&
    (value.target_ul === undefined ||
      value.target_ul === null ||
      typeof value.target_ul === "number")
  );
}

/** Parse one websocket frame; null means "ignore this frame". */
export function parseServerMessage(raw: unknown): ServerMessage | null {
  if (typeof raw !== "string") return null;
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (!isRecord(data)) return null;
  if (data.type === "snapshot" && isSnapshot(data)) return data;
  if (data.type === "error" && typeof data.message === "string") {
    return { type: "error", message: data.message };
  }
  return null;
}
