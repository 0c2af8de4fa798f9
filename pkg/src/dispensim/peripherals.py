"""Logical-signal models of the dispenser hardware.

Three interfaces, all modeled at the level the firmware sees them:
a 4x4 matrix keypad with column strobing and debounce, a 16x4 character
LCD driven by high-level ops, and the two direction pins of the motor
driver. No bus timing, no electrical behavior.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .keys import Key

SCAN_PERIOD_MS = 10
DEBOUNCE_SCANS = 2

LCD_ROWS = 4
LCD_COLS = 16

# Telephone-style layout; letter column carries the control keys.
KEYPAD_LAYOUT = (
    (Key.D1, Key.D2, Key.D3, Key.CONFIRM),
    (Key.D4, Key.D5, Key.D6, Key.BACKSPACE),
    (Key.D7, Key.D8, Key.D9, Key.DOT),
    (Key.CLEAR, Key.D0, Key.STOP, Key.RESERVED),
)

CONTACT_FOR_KEY = {
    key: (row, col)
    for row, keys in enumerate(KEYPAD_LAYOUT)
    for col, key in enumerate(keys)
}

Contact = tuple[int, int]


def keymap(row: int, col: int) -> Key:
    """Map a physical (row, col) contact to its logical key."""
    return KEYPAD_LAYOUT[row][col]


def keypad_scan(pressed: Iterable[Contact]) -> Optional[Contact]:
    """Scan the matrix by strobing one column at a time.

    Each column is driven low in turn and the four pulled-up row lines are
    read back; a low row means the contact at (row, strobed column) is
    closed. The single-key contract: exactly one closed contact is
    reported, anything else (open matrix, multi-press) reads as nothing.
    """
    closed = set(pressed)
    detected = []
    for col in range(4):
        for row in range(4):
            if (row, col) in closed:
                detected.append((row, col))
    if len(detected) == 1:
        return detected[0]
    return None


@dataclass(frozen=True)
class KeyEvent:
    """A debounced key press: emitted once per continuous press."""

    key: Key
    at: int


class Debouncer:
    """Two-consecutive-sample debounce over raw scan results.

    A key event fires when the same contact is seen in DEBOUNCE_SCANS
    consecutive scans; the press is then latched and must fully release
    (one all-open scan) before another event can fire. No auto-repeat.
    """

    def __init__(self) -> None:
        self._prev: Optional[Contact] = None
        self._latched = False

    def reset(self) -> None:
        self._prev = None
        self._latched = False

    def feed(self, raw: Optional[Contact], now: int) -> Optional[KeyEvent]:
        """Feed one scan result; returns an event if the press confirmed."""
        if raw is None:
            self._prev = None
            self._latched = False
            return None
        if raw == self._prev and not self._latched:
            self._latched = True
            return KeyEvent(key=keymap(*raw), at=now)
        if raw != self._prev:
            # New contact: start (or restart) the confirmation window. If a
            # press is still latched the matrix never fully opened, so no
            # new event is armed until it does.
            self._prev = raw
        return None


@dataclass(frozen=True)
class LcdClear:
    """Blank all rows and home the cursor."""


@dataclass(frozen=True)
class LcdSetCursor:
    row: int
    col: int


@dataclass(frozen=True)
class LcdPrint:
    text: str


LcdOp = LcdClear | LcdSetCursor | LcdPrint


@dataclass(frozen=True)
class LcdFrame:
    """The visible 4x16 character frame plus cursor position."""

    rows: tuple[str, str, str, str]
    cursor: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        assert len(self.rows) == LCD_ROWS
        assert all(len(row) == LCD_COLS for row in self.rows)


BLANK_ROW = " " * LCD_COLS


def blank_frame() -> LcdFrame:
    return LcdFrame(rows=(BLANK_ROW,) * LCD_ROWS)


def lcd_apply(frame: LcdFrame, op: LcdOp) -> LcdFrame:
    """Apply one LCD op; printing truncates at the last column, never wraps."""
    if isinstance(op, LcdClear):
        return blank_frame()
    if isinstance(op, LcdSetCursor):
        row = min(max(op.row, 0), LCD_ROWS - 1)
        col = min(max(op.col, 0), LCD_COLS - 1)
        return LcdFrame(rows=frame.rows, cursor=(row, col))
    row, col = frame.cursor
    text = op.text[: LCD_COLS - col]
    line = frame.rows[row]
    new_line = line[:col] + text + line[col + len(text):]
    rows = tuple(new_line if i == row else r for i, r in enumerate(frame.rows))
    new_col = min(col + len(text), LCD_COLS - 1)
    return LcdFrame(rows=rows, cursor=(row, new_col))  # type: ignore[arg-type]


@dataclass(frozen=True)
class MotorCommand:
    """The IN3/IN4 pin pair of the H-bridge channel driving the pump."""

    in3: bool
    in4: bool


MOTOR_FORWARD = MotorCommand(in3=True, in4=False)
MOTOR_STOP = MotorCommand(in3=False, in4=False)


class MotorMode(Enum):
    FORWARD = "FORWARD"
    STOP = "STOP"
    REVERSE = "REVERSE"
    BRAKE_INVALID = "BRAKE_INVALID"


def motor_decode(cmd: MotorCommand) -> MotorMode:
    """Decode the pin pair into the H-bridge drive mode.

    The firmware only ever emits FORWARD and STOP; REVERSE and
    BRAKE_INVALID exist so tests can assert that invariant.
    """
    if cmd.in3 and not cmd.in4:
        return MotorMode.FORWARD
    if not cmd.in3 and not cmd.in4:
        return MotorMode.STOP
    if not cmd.in3 and cmd.in4:
        return MotorMode.REVERSE
    return MotorMode.BRAKE_INVALID
