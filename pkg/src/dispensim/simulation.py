"""One complete virtual dispenser, advanced one fixed tick at a time.

Composes the firmware state machine with the keypad matrix, debouncer,
LCD model, motor pins and plant. The batch scenario runner and the live
bridge both drive this same core, so their behavior per tick is identical
by construction. Callers mutate the matrix (press/release) between ticks;
everything else happens inside advance_tick.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import controller
from .controller import ControllerState, Effects, Mode
from .keys import Key
from .peripherals import (
    Contact,
    Debouncer,
    LcdFrame,
    MotorCommand,
    MotorMode,
    blank_frame,
    keypad_scan,
    lcd_apply,
    motor_decode,
)
from .plant import (
    DEFAULT_TANK_UL,
    PlantState,
    dispensed_ul,
    fresh_plant,
    step_plant,
    tank_ul,
)

DEFAULT_TICK_MS = 10


class FirmwarePinFault(RuntimeError):
    """The firmware drove the motor pins into reverse or an invalid brake."""


@dataclass
class TickResult:
    """What happened during one tick, for transcript and snapshot builders."""

    at: int
    key: Optional[Key] = None
    motor_edge: Optional[MotorMode] = None
    frame_changed: bool = False
    rows: tuple[str, str, str, str] = ("",) * 4


@dataclass
class DispenserSim:
    tick_ms: int = DEFAULT_TICK_MS
    flow_k: int = controller.DEFAULT_FLOW_K_MS_PER_L
    tank_init_ul: int = DEFAULT_TANK_UL

    now: int = field(init=False, default=0)
    pressed: set[Contact] = field(init=False, default_factory=set)
    state: ControllerState = field(init=False)
    plant: PlantState = field(init=False)
    frame: LcdFrame = field(init=False)
    motor_mode: MotorMode = field(init=False, default=MotorMode.STOP)
    commands: list[MotorCommand] = field(init=False, default_factory=list)

    def __post_init__(self) -> None:
        self._debouncer = Debouncer()
        self._reported_rows: Optional[tuple[str, ...]] = None
        self._boot()

    def _boot(self) -> None:
        self.now = 0
        self.frame = blank_frame()
        self.motor_mode = MotorMode.STOP
        self.commands = []
        self.plant = fresh_plant(self.flow_k, self.tank_init_ul)
        self._debouncer.reset()
        self._reported_rows = None
        self.state, effects = controller.init()
        self._apply_effects(effects)

    def reset(self) -> None:
        """Reboot firmware and plant; physically held keys stay held."""
        self._boot()

    def press(self, contact: Contact) -> None:
        self.pressed.add(contact)

    def release(self, contact: Contact) -> None:
        self.pressed.discard(contact)

    @property
    def dispensed_ul(self) -> int:
        return dispensed_ul(self.plant)

    @property
    def tank_ul(self) -> int:
        return tank_ul(self.plant)

    def _apply_effects(self, effects: Effects) -> None:
        if effects.motor is not None:
            self.commands.append(effects.motor)
            mode = motor_decode(effects.motor)
            if mode in (MotorMode.REVERSE, MotorMode.BRAKE_INVALID):
                raise FirmwarePinFault(f"firmware emitted {mode.value}")
            self.motor_mode = mode
        for op in effects.lcd:
            self.frame = lcd_apply(self.frame, op)

    def advance_tick(self) -> TickResult:
        """Scan, debounce, poll the firmware, drive the pins, step the plant."""
        t = self.now
        result = TickResult(at=t)
        mode_before = self.motor_mode

        raw = keypad_scan(self.pressed)
        event = self._debouncer.feed(raw, t)
        if event is not None:
            result.key = event.key
            self.state, effects = controller.handle_key(
                self.state, t, event.key, self.flow_k
            )
            self._apply_effects(effects)
        self.state, effects = controller.tick(self.state, t, self.flow_k)
        self._apply_effects(effects)

        if self.motor_mode is not mode_before:
            result.motor_edge = self.motor_mode
        self.plant = step_plant(self.plant, self.tick_ms, self.motor_mode)

        if self.frame.rows != self._reported_rows:
            self._reported_rows = self.frame.rows
            result.frame_changed = True
        result.rows = self.frame.rows

        self.now = t + self.tick_ms
        return result

    def idle(self) -> bool:
        """Nothing held, nothing dispensing: a batch run can wind down."""
        return not self.pressed and self.state.mode is Mode.AWAITING_INPUT
