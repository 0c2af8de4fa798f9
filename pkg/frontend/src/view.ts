// Pure projection from panel state to what the DOM should show. The LCD
// rows pass through verbatim: the device owns its formatting, the panel
// only displays it.

import type { PanelState } from "./state.js";

export const BLANK_ROW = " ".repeat(16);

export interface ViewModel {
  rows: [string, string, string, string];
  banner: string | null;
  keypadEnabled: boolean;
  motorOn: boolean;
  motorLabel: string;
  tankFraction: number;
  tankLabel: string;
  timescale: number;
  clockLabel: string;
  errorLabel: string | null;
}

export function litersLabel(microliters: number): string {
  return (microliters / 1_000_000).toFixed(2) + " L";
}

export function viewModel(state: PanelState): ViewModel {
  const snap = state.snapshot;
  const rows: [string, string, string, string] = snap
    ? [...snap.lcd]
    : [BLANK_ROW, BLANK_ROW, BLANK_ROW, BLANK_ROW];

  // Initial fill is recoverable from any snapshot: the tank plus what has
  // been pumped out of it.
  let tankFraction = 0;
  let tankLabel = "--";
  if (snap) {
    const capacity = snap.tank_ul + snap.dispensed_ul;
    tankFraction = capacity > 0 ? snap.tank_ul / capacity : 0;
    tankLabel = litersLabel(snap.tank_ul);
  }

  return {
    rows,
    banner: state.connected ? null : "Disconnected. Retrying…",
    keypadEnabled: state.connected,
    motorOn: snap?.motor ?? false,
    motorLabel: snap?.motor ? "PUMP RUNNING" : "PUMP STOPPED",
    tankFraction,
    tankLabel,
    timescale: snap?.timescale ?? 1,
    clockLabel: snap ? (snap.t_ms / 1000).toFixed(2) + " s" : "--",
    errorLabel: state.lastError,
  };
}
