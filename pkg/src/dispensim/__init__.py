"""Deterministic simulator of a keypad-driven fuel dispenser.

The firmware state machine, its keypad/LCD/motor peripherals, and an
exact-integer flow plant advance together under one fixed-step clock.
Batch runs produce byte-stable transcripts; a live bridge exposes the
same loop over a WebSocket for interactive panels.
"""

from .controller import (
    DEFAULT_FLOW_K_MS_PER_L,
    ControllerState,
    Effects,
    EmptyInput,
    InvalidVolume,
    Mode,
    OutOfRange,
    TrailingDot,
    ZeroVolume,
    append_entry,
    compute_runtime_ms,
    elapsed_volume_ul,
    format_liters,
    handle_key,
    init,
    parse_volume,
    render_lcd,
    tick,
)
from .keys import LABEL_TO_KEY, Key
from .peripherals import (
    CONTACT_FOR_KEY,
    KEYPAD_LAYOUT,
    MOTOR_FORWARD,
    MOTOR_STOP,
    Debouncer,
    KeyEvent,
    LcdClear,
    LcdFrame,
    LcdPrint,
    LcdSetCursor,
    MotorCommand,
    MotorMode,
    blank_frame,
    keymap,
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
from .scenario import (
    MalformedLine,
    PressEvent,
    RunConfig,
    Scenario,
    ScenarioError,
    UnknownKeyLabel,
    UnsortedEvents,
    liters_to_ul,
    parse_scenario,
    run_scenario,
)
from .simulation import DEFAULT_TICK_MS, DispenserSim, FirmwarePinFault, TickResult
from .transcript import (
    Final,
    KeyAccepted,
    LcdSnapshot,
    MotorEdge,
    Transcript,
    format_transcript,
)

__version__ = "1.0.0"

__all__ = [
    "CONTACT_FOR_KEY",
    "ControllerState",
    "DEFAULT_FLOW_K_MS_PER_L",
    "DEFAULT_TANK_UL",
    "DEFAULT_TICK_MS",
    "Debouncer",
    "DispenserSim",
    "Effects",
    "EmptyInput",
    "Final",
    "FirmwarePinFault",
    "InvalidVolume",
    "KEYPAD_LAYOUT",
    "Key",
    "KeyAccepted",
    "KeyEvent",
    "LABEL_TO_KEY",
    "LcdClear",
    "LcdFrame",
    "LcdPrint",
    "LcdSetCursor",
    "LcdSnapshot",
    "MOTOR_FORWARD",
    "MOTOR_STOP",
    "MalformedLine",
    "Mode",
    "MotorCommand",
    "MotorEdge",
    "MotorMode",
    "OutOfRange",
    "PlantState",
    "PressEvent",
    "RunConfig",
    "Scenario",
    "ScenarioError",
    "TickResult",
    "TrailingDot",
    "Transcript",
    "UnknownKeyLabel",
    "UnsortedEvents",
    "ZeroVolume",
    "append_entry",
    "blank_frame",
    "compute_runtime_ms",
    "dispensed_ul",
    "elapsed_volume_ul",
    "format_liters",
    "format_transcript",
    "fresh_plant",
    "handle_key",
    "init",
    "keymap",
    "keypad_scan",
    "lcd_apply",
    "liters_to_ul",
    "motor_decode",
    "parse_scenario",
    "parse_volume",
    "render_lcd",
    "run_scenario",
    "step_plant",
    "tank_ul",
    "tick",
]
