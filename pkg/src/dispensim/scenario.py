"""Timed key-press scripts: parsing and the fixed-step batch runner.

Script grammar, one event per line:

    @<ms> press <key> [hold <ms>]
    @0 tank <liters>
    @0 flowk <ms_per_liter>

Key labels are the keypad legends 0-9 A B C D * #, plus "." as an
alias for the decimal-point key. A line is a comment only when '#'
sits at column 0 followed by a space; a bare "#" token is the Stop
key. Event times must be non-decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .controller import DEFAULT_FLOW_K_MS_PER_L
from .keys import LABEL_TO_KEY, Key
from .peripherals import CONTACT_FOR_KEY, Contact
from .plant import DEFAULT_TANK_UL
from .simulation import DEFAULT_TICK_MS, DispenserSim
from .transcript import (
    Entry,
    Final,
    KeyAccepted,
    LcdSnapshot,
    MotorEdge,
    Transcript,
)

DEFAULT_HOLD_MS = 50
IDLE_EXIT_MS = 1_000


class ScenarioError(Exception):
    """Base for scenario script rejections."""


class MalformedLine(ScenarioError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class UnsortedEvents(ScenarioError):
    def __init__(self, line_no: int):
        super().__init__(f"line {line_no}: event time earlier than a previous event")
        self.line_no = line_no


class UnknownKeyLabel(ScenarioError):
    def __init__(self, line_no: int, label: str):
        super().__init__(f"line {line_no}: unknown key label {label!r}")
        self.line_no = line_no
        self.label = label


@dataclass(frozen=True)
class PressEvent:
    at: int
    key: Key
    hold_ms: int


@dataclass(frozen=True)
class Scenario:
    presses: tuple[PressEvent, ...]
    tank_ul: Optional[int] = None
    flow_k: Optional[int] = None

    @property
    def last_ms(self) -> int:
        if not self.presses:
            return 0
        return max(p.at + p.hold_ms for p in self.presses)


def _parse_time(token: str, line_no: int) -> int:
    if not token.startswith("@") or not token[1:].isdigit():
        raise MalformedLine(line_no, f"expected @<ms>, got {token!r}")
    return int(token[1:])


def _parse_positive_int(token: str, line_no: int, what: str) -> int:
    if not token.isdigit() or int(token) < 1:
        raise MalformedLine(line_no, f"{what} must be a positive integer")
    return int(token)


def liters_to_ul(token: str) -> int:
    """Decimal liters to exact microliters; up to 6 fraction digits."""
    whole, dot, frac = token.partition(".")
    if not whole.isdigit() or (dot and not frac.isdigit()) or len(frac) > 6:
        raise ValueError(f"bad liter value {token!r}")
    ul = int(whole) * 1_000_000 + int(frac.ljust(6, "0") or "0")
    if ul == 0:
        raise ValueError("volume must be positive")
    return ul


def _parse_liters(token: str, line_no: int) -> int:
    try:
        return liters_to_ul(token)
    except ValueError as exc:
        raise MalformedLine(line_no, str(exc)) from None


def parse_scenario(text: str) -> Scenario:
    presses: list[PressEvent] = []
    tank_ul: Optional[int] = None
    flow_k: Optional[int] = None
    prev_at = 0

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("# "):
            continue
        tokens = line.split()
        at = _parse_time(tokens[0], line_no)
        if at < prev_at:
            raise UnsortedEvents(line_no)
        prev_at = at

        verb = tokens[1] if len(tokens) > 1 else ""
        if verb == "press":
            if len(tokens) == 3:
                hold_ms = DEFAULT_HOLD_MS
            elif len(tokens) == 5 and tokens[3] == "hold":
                hold_ms = _parse_positive_int(tokens[4], line_no, "hold")
            else:
                raise MalformedLine(line_no, "expected: @<ms> press <key> [hold <ms>]")
            label = tokens[2]
            key = LABEL_TO_KEY.get(label)
            if key is None:
                raise UnknownKeyLabel(line_no, label)
            presses.append(PressEvent(at=at, key=key, hold_ms=hold_ms))
        elif verb == "tank":
            if len(tokens) != 3:
                raise MalformedLine(line_no, "expected: @0 tank <liters>")
            if at != 0:
                raise MalformedLine(line_no, "tank may only be set at @0")
            if tank_ul is not None:
                raise MalformedLine(line_no, "duplicate tank directive")
            tank_ul = _parse_liters(tokens[2], line_no)
        elif verb == "flowk":
            if len(tokens) != 3:
                raise MalformedLine(line_no, "expected: @0 flowk <ms_per_liter>")
            if at != 0:
                raise MalformedLine(line_no, "flowk may only be set at @0")
            if flow_k is not None:
                raise MalformedLine(line_no, "duplicate flowk directive")
            flow_k = _parse_positive_int(tokens[2], line_no, "flowk")
        else:
            raise MalformedLine(line_no, f"unknown directive {verb!r}")

    return Scenario(presses=tuple(presses), tank_ul=tank_ul, flow_k=flow_k)


@dataclass(frozen=True)
class RunConfig:
    tick_ms: int = DEFAULT_TICK_MS
    until_ms: Optional[int] = None
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L
    tank_ul: int = DEFAULT_TANK_UL


def _tick_ceil(t: int, tick_ms: int) -> int:
    return -(-t // tick_ms) * tick_ms


def _contact_actions(
    presses: tuple[PressEvent, ...], tick_ms: int
) -> dict[int, list[tuple[bool, Contact]]]:
    """Quantize each press to matrix close/open actions on tick boundaries.

    A press at `at` holding `hold_ms` closes its contact for the scans in
    [ceil(at), ceil(at) + tick * floor(hold / tick)); holds shorter than
    one tick are never sampled at all.
    """
    actions: dict[int, list[tuple[bool, Contact]]] = {}
    for press in presses:
        sampled_ticks = press.hold_ms // tick_ms
        if sampled_ticks == 0:
            continue
        down_at = _tick_ceil(press.at, tick_ms)
        up_at = down_at + sampled_ticks * tick_ms
        contact = CONTACT_FOR_KEY[press.key]
        actions.setdefault(down_at, []).append((True, contact))
        actions.setdefault(up_at, []).append((False, contact))
    return actions


def run_scenario(scenario: Scenario, config: RunConfig = RunConfig()) -> Transcript:
    """Run the script in a fixed-step loop and collect the transcript.

    The loop ends at `until_ms` when given, otherwise after the system
    has been idle (no held contacts, no pending script actions, firmware
    awaiting input, nothing recorded) for one full second.
    """
    flow_k = scenario.flow_k if scenario.flow_k is not None else config.flow_k
    tank_ul = scenario.tank_ul if scenario.tank_ul is not None else config.tank_ul
    sim = DispenserSim(tick_ms=config.tick_ms, flow_k=flow_k, tank_init_ul=tank_ul)

    actions = _contact_actions(scenario.presses, config.tick_ms)
    hold_counts: dict[Contact, int] = {}
    entries: list[Entry] = []
    quiet_ms = 0

    while True:
        if config.until_ms is not None:
            if sim.now >= config.until_ms:
                break
        elif quiet_ms >= IDLE_EXIT_MS:
            break

        for closing, contact in actions.pop(sim.now, ()):
            count = hold_counts.get(contact, 0) + (1 if closing else -1)
            hold_counts[contact] = count
            if closing and count == 1:
                sim.press(contact)
            elif not closing and count == 0:
                sim.release(contact)

        result = sim.advance_tick()
        recorded = False
        if result.key is not None:
            entries.append(KeyAccepted(at=result.at, key=result.key))
            recorded = True
        if result.motor_edge is not None:
            entries.append(MotorEdge(at=result.at, mode=result.motor_edge))
            recorded = True
        if result.frame_changed:
            entries.append(LcdSnapshot(at=result.at, rows=result.rows))
            recorded = True

        if recorded or not sim.idle() or actions:
            quiet_ms = 0
        else:
            quiet_ms += config.tick_ms

    entries.append(
        Final(at=sim.now, dispensed_ul=sim.dispensed_ul, tank_ul=sim.tank_ul)
    )
    return Transcript(tick_ms=config.tick_ms, entries=tuple(entries))
