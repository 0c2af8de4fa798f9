import { PanelSocket } from "./connection.js";
import type { SocketLike } from "./connection.js";
import { buildPanel, paint } from "./dom.js";
import { HoldGate } from "./keypad.js";
import { keyDown, keyUp, reset, setTimescale } from "./protocol.js";
import { initialState, onClose, onOpen, onServerMessage } from "./state.js";
import { viewModel } from "./view.js";

function endpoint(): string {
  const override = new URLSearchParams(window.location.search).get("ws");
  if (override) return override;
  const scheme = window.location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${window.location.host}/ws`;
}

const root = document.getElementById("panel");
if (root === null) throw new Error("missing #panel element");

let state = initialState;
const refs = buildPanel(root, new HoldGate(sendEdge));

function repaint(): void {
  paint(refs, viewModel(state));
}

const socket = new PanelSocket(
  endpoint(),
  {
    open: () => {
      state = onOpen(state);
      repaint();
    },
    close: () => {
      state = onClose(state);
      repaint();
    },
    message: (message) => {
      state = onServerMessage(state, message);
      repaint();
    },
  },
  (url) => new WebSocket(url) as unknown as SocketLike,
);

function sendEdge(label: string, edge: "key_down" | "key_up"): void {
  socket.send(edge === "key_down" ? keyDown(label) : keyUp(label));
}

refs.slider.addEventListener("change", () => {
  socket.send(setTimescale(Number(refs.slider.value)));
});
refs.resetButton.addEventListener("click", () => {
  socket.send(reset());
});

repaint();
socket.connect();
