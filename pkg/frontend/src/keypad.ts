// Keypad geometry and press timing. A real finger rests on a key for tens
// of milliseconds; a mouse click can be far shorter than the device's
// debounce window, so releases are held back until the synthetic press has
// lasted at least MIN_HOLD_MS.

export const MIN_HOLD_MS = 40;

export interface KeyCap {
  label: string;
  caption: string;
}

export const KEYPAD_LAYOUT: KeyCap[][] = [
  [
    { label: "1", caption: "" },
    { label: "2", caption: "" },
    { label: "3", caption: "" },
    { label: "A", caption: "ok" },
  ],
  [
    { label: "4", caption: "" },
    { label: "5", caption: "" },
    { label: "6", caption: "" },
    { label: "B", caption: "del" },
  ],
  [
    { label: "7", caption: "" },
    { label: "8", caption: "" },
    { label: "9", caption: "" },
    { label: "C", caption: "." },
  ],
  [
    { label: "*", caption: "clr" },
    { label: "0", caption: "" },
    { label: "#", caption: "stop" },
    { label: "D", caption: "" },
  ],
];

export type KeyEdge = "key_down" | "key_up";
export type SendEdge = (label: string, edge: KeyEdge) => void;

export class HoldGate {
  private downAt = new Map<string, number>();
  private pendingUp = new Map<string, ReturnType<typeof setTimeout>>();

  constructor(
    private send: SendEdge,
    private minHoldMs: number = MIN_HOLD_MS,
  ) {}

  press(label: string): void {
    this.flushPendingUp(label);
    if (this.downAt.has(label)) return;
    this.downAt.set(label, Date.now());
    this.send(label, "key_down");
  }

  release(label: string): void {
    const pressedAt = this.downAt.get(label);
    if (pressedAt === undefined) return;
    this.downAt.delete(label);
    const remaining = this.minHoldMs - (Date.now() - pressedAt);
    if (remaining <= 0) {
      this.send(label, "key_up");
      return;
    }
    const timer = setTimeout(() => {
      this.pendingUp.delete(label);
      this.send(label, "key_up");
    }, remaining);
    this.pendingUp.set(label, timer);
  }

  /** Abandon all held and scheduled keys without emitting anything. */
  clear(): void {
    for (const timer of this.pendingUp.values()) clearTimeout(timer);
    this.pendingUp.clear();
    this.downAt.clear();
  }

  // A re-press while the previous release is still queued must stay an
  // up-then-down sequence on the wire.
  private flushPendingUp(label: string): void {
    const timer = this.pendingUp.get(label);
    if (timer === undefined) return;
    clearTimeout(timer);
    this.pendingUp.delete(label);
    this.send(label, "key_up");
  }
}
