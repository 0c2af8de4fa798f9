// Panel state is deliberately tiny: the connection flag plus whatever the
// last snapshot said. Nothing on the device is mirrored or predicted here.

import type { ServerMessage, Snapshot } from "./protocol.js";

export interface PanelState {
  connected: boolean;
  snapshot: Snapshot | null;
  lastError: string | null;
}

export const initialState: PanelState = {
  connected: false,
  snapshot: null,
  lastError: null,
};

export function onOpen(state: PanelState): PanelState {
  return { ...state, connected: true, lastError: null };
}

// The stale snapshot is kept so the panel still shows the last known
// reading behind the disconnected banner.
export function onClose(state: PanelState): PanelState {
  return { ...state, connected: false };
}

export function onServerMessage(
  state: PanelState,
  message: ServerMessage,
): PanelState {
  if (message.type === "snapshot") {
    return { ...state, snapshot: message, lastError: null };
  }
  return { ...state, lastError: message.message };
}
