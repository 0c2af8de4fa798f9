// Websocket wrapper with a fixed reconnect cadence. The socket constructor
// is injected so tests can drive the lifecycle without a browser.

import { parseServerMessage } from "./protocol.js";
import type { ClientMessage, ServerMessage } from "./protocol.js";

export const RETRY_MS = 2_000;

const SOCKET_OPEN = 1;

export interface SocketLike {
  readyState: number;
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionEvents {
  open(): void;
  close(): void;
  message(message: ServerMessage): void;
}

export class PanelSocket {
  private socket: SocketLike | null = null;
  private retryTimer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(
    private url: string,
    private events: ConnectionEvents,
    private factory: SocketFactory,
    private retryMs: number = RETRY_MS,
  ) {}

  connect(): void {
    if (this.stopped) return;
    if (this.retryTimer !== null) {
      clearTimeout(this.retryTimer);
      this.retryTimer = null;
    }
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => this.events.open();
    socket.onerror = () => {
      // The close handler owns recovery.
    };
    socket.onclose = () => {
      if (this.socket !== socket) return;
      this.socket = null;
      this.events.close();
      if (!this.stopped) {
        this.retryTimer = setTimeout(() => this.connect(), this.retryMs);
      }
    };
    socket.onmessage = (event) => {
      const message = parseServerMessage(event.data);
      if (message !== null) this.events.message(message);
    };
  }

  /** Send if connected; report whether anything went out. */
  send(message: ClientMessage): boolean {
    if (this.socket === null || this.socket.readyState !== SOCKET_OPEN) {
      return false;
    }
    this.socket.send(JSON.stringify(message));
    return true;
  }

  close(): void {
    this.stopped = true;
    if (this.retryTimer !== null) {
      clearTimeout(this.retryTimer);
      this.retryTimer = null;
    }
    this.socket?.close();
    this.socket = null;
  }
}
