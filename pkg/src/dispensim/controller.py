"""The dispenser firmware as a pure, tick-driven state machine.

All operations take the current state and the simulated time and return a
new state plus the effects to apply (motor pin command, LCD ops). Nothing
here reads a clock or touches hardware, so identical call sequences always
produce identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .keys import Key
from .peripherals import (
    LcdClear,
    LcdFrame,
    LcdOp,
    LcdPrint,
    LcdSetCursor,
    MOTOR_FORWARD,
    MOTOR_STOP,
    MotorCommand,
    blank_frame,
    lcd_apply,
)

# Calibrated flow constant: milliseconds of motor-on time per liter.
DEFAULT_FLOW_K_MS_PER_L = 26_000

# Entry limits: 6 characters fit the LCD row next to nothing else needed,
# two decimals match the 10 mL granularity of one motor-time quantum.
MAX_BUFFER_LEN = 6
MAX_FRACTION_DIGITS = 2
MAX_VOLUME_UL = 99_990_000

PROMPT_TEXT = "Enter Amount"
DISPENSING_TEXT = "Dispensing"
INVALID_TEXT = "Invalid amount"


class Mode(Enum):
    AWAITING_INPUT = "AWAITING_INPUT"
    DISPENSING = "DISPENSING"


@dataclass(frozen=True)
class ControllerState:
    """Firmware mode plus the fields that mode carries.

    buffer is only meaningful while awaiting input; target/started_at/
    duration only while dispensing. motor_running is derived: the motor is
    on exactly while dispensing.
    """

    mode: Mode = Mode.AWAITING_INPUT
    buffer: str = ""
    target_ul: int = 0
    started_at: int = 0
    duration_ms: int = 0

    @property
    def motor_running(self) -> bool:
        return self.mode is Mode.DISPENSING


@dataclass(frozen=True)
class Effects:
    """Commands the firmware emits: at most one pin command, ordered LCD ops."""

    motor: Optional[MotorCommand] = None
    lcd: tuple[LcdOp, ...] = ()


class InvalidVolume(ValueError):
    """A buffer that cannot be confirmed as a dispense target."""


class EmptyInput(InvalidVolume):
    pass


class TrailingDot(InvalidVolume):
    pass


class ZeroVolume(InvalidVolume):
    pass


class OutOfRange(InvalidVolume):
    pass


def parse_volume(buffer: str) -> int:
    """Parse an entry buffer into exact microliters.

    Accepts a decimal with at most two fraction digits; rejects empty
    input, a trailing decimal point, zero, and anything above 99.99 L.
    """
    if buffer == "":
        raise EmptyInput("nothing entered")
    if buffer.endswith("."):
        raise TrailingDot("entry ends in a decimal point")
    whole, _, fraction = buffer.partition(".")
    micro = int(whole) * 1_000_000 + int(fraction or "0") * 10 ** (6 - len(fraction))
    if micro == 0:
        raise ZeroVolume("cannot dispense zero")
    if micro > MAX_VOLUME_UL:
        raise OutOfRange(f"limit is {MAX_VOLUME_UL} uL")
    return micro


def compute_runtime_ms(target_ul: int, flow_k_ms_per_l: int = DEFAULT_FLOW_K_MS_PER_L) -> int:
    """Motor runtime for a target volume, integer ms, remainder half-up.

    With the default constant this is target x 26 / 1000.
    """
    return (target_ul * flow_k_ms_per_l + 500_000) // 1_000_000


def elapsed_volume_ul(elapsed_ms: int, flow_k_ms_per_l: int = DEFAULT_FLOW_K_MS_PER_L) -> int:
    """Volume the open-loop model attributes to a motor-on duration."""
    return (elapsed_ms * 1_000_000 + flow_k_ms_per_l // 2) // flow_k_ms_per_l


def format_liters(volume_ul: int) -> str:
    """Render microliters as liters with two decimals, half-up."""
    hundredths = (volume_ul + 5_000) // 10_000
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def append_entry(buffer: str, key: Key) -> str:
    """Apply one digit/dot press to the entry buffer.

    Returns the new buffer, or the old one unchanged if the press would
    break an entry rule (too long, second dot, third fraction digit).
    A leading dot press inserts "0." so the entry never starts with '.'.
    """
    digit = key.digit
    if digit is not None:
        candidate = buffer + digit
    elif key is Key.DOT:
        if "." in buffer:
            return buffer
        candidate = "0." if buffer == "" else buffer + "."
    else:
        return buffer
    if len(candidate) > MAX_BUFFER_LEN:
        return buffer
    _, _, fraction = candidate.partition(".")
    if len(fraction) > MAX_FRACTION_DIGITS:
        return buffer
    return candidate


def _progress_row(state: ControllerState, now: Optional[int], flow_k: int) -> str:
    elapsed = 0 if now is None else max(0, now - state.started_at)
    done = elapsed_volume_ul(elapsed, flow_k)
    return f"{format_liters(done)} L / {format_liters(state.target_ul)} L"


def _redraw_ops(
    state: ControllerState,
    now: Optional[int] = None,
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L,
    error: Optional[str] = None,
) -> tuple[LcdOp, ...]:
    """Full-frame redraw: clear, then write each non-blank row."""
    if state.mode is Mode.AWAITING_INPUT:
        rows = [PROMPT_TEXT, state.buffer, "", ""]
    else:
        rows = [DISPENSING_TEXT, "", _progress_row(state, now, flow_k), ""]
    if error is not None:
        rows[3] = error
    ops: list[LcdOp] = [LcdClear()]
    for i, text in enumerate(rows):
        if text:
            ops.append(LcdSetCursor(i, 0))
            ops.append(LcdPrint(text))
    return tuple(ops)


def render_lcd(
    state: ControllerState,
    now: Optional[int] = None,
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L,
) -> LcdFrame:
    """The canonical frame for a state.

    Row 0 prompt/status, row 1 entry buffer, row 2 dispensing progress,
    row 3 blank (errors are transient, drawn only by the failed confirm).
    Without a time, a dispensing state renders zero elapsed.
    """
    frame = blank_frame()
    for op in _redraw_ops(state, now, flow_k):
        frame = lcd_apply(frame, op)
    return frame


def init() -> tuple[ControllerState, Effects]:
    """Power-on: empty entry, motor pins low, prompt on the display."""
    state = ControllerState()
    return state, Effects(motor=MOTOR_STOP, lcd=_redraw_ops(state))


def handle_key(
    state: ControllerState,
    now: int,
    key: Key,
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L,
) -> tuple[ControllerState, Effects]:
    """Process one debounced key.

    While dispensing only STOP is honored; while awaiting input, digits
    and dot edit the buffer, BACKSPACE/CLEAR correct it, CONFIRM starts
    the motor if the entry parses. Invalid edits and a failed confirm
    leave the state untouched.
    """
    if state.mode is Mode.DISPENSING:
        if key is Key.STOP:
            new_state = ControllerState()
            return new_state, Effects(motor=MOTOR_STOP, lcd=_redraw_ops(new_state))
        return state, Effects()

    if key.digit is not None or key is Key.DOT:
        new_buffer = append_entry(state.buffer, key)
        if new_buffer == state.buffer:
            return state, Effects()
        new_state = replace(state, buffer=new_buffer)
        return new_state, Effects(lcd=_redraw_ops(new_state))

    if key is Key.BACKSPACE:
        if state.buffer == "":
            return state, Effects()
        new_state = replace(state, buffer=state.buffer[:-1])
        return new_state, Effects(lcd=_redraw_ops(new_state))

    if key is Key.CLEAR:
        new_state = ControllerState()
        return new_state, Effects(lcd=_redraw_ops(new_state))

    if key is Key.CONFIRM:
        try:
            target = parse_volume(state.buffer)
        except InvalidVolume:
            return state, Effects(lcd=_redraw_ops(state, error=INVALID_TEXT))
        new_state = ControllerState(
            mode=Mode.DISPENSING,
            target_ul=target,
            started_at=now,
            duration_ms=compute_runtime_ms(target, flow_k),
        )
        return new_state, Effects(
            motor=MOTOR_FORWARD, lcd=_redraw_ops(new_state, now, flow_k)
        )

    # STOP while idle and the reserved key do nothing.
    return state, Effects()


def tick(
    state: ControllerState,
    now: int,
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L,
) -> tuple[ControllerState, Effects]:
    """Per-poll housekeeping: finish an elapsed run, refresh progress."""
    if state.mode is not Mode.DISPENSING:
        return state, Effects()
    if now - state.started_at >= state.duration_ms:
        new_state = ControllerState()
        return new_state, Effects(motor=MOTOR_STOP, lcd=_redraw_ops(new_state))
    return state, Effects(lcd=_redraw_ops(state, now, flow_k))
