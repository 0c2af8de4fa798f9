"""Deterministic simulation driver behind the live bridge.

One driver owns all mutable simulation state. Sessions hand it parsed
client messages; it applies them at the next tick boundary, advances the
fixed-step loop, and reports a fresh snapshot whenever anything beyond
the clock changed. Wall-clock pacing lives in the app layer, so the
driver itself stays fully deterministic and directly testable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from ..controller import DEFAULT_FLOW_K_MS_PER_L, Mode
from ..keys import LABEL_TO_KEY
from ..peripherals import CONTACT_FOR_KEY, Contact
from ..scenario import DEFAULT_TANK_UL
from ..simulation import DEFAULT_TICK_MS, DispenserSim
from .models import ClientMessage, KeyDown, KeyUp, Reset, SetTimescale, Snapshot

AUTO_RELEASE_MS = 5_000


@dataclass(frozen=True)
class BridgeSettings:
    tick_ms: int = DEFAULT_TICK_MS
    flow_k: int = DEFAULT_FLOW_K_MS_PER_L
    tank_ul: int = DEFAULT_TANK_UL
    timescale: float = 1.0

    def __post_init__(self) -> None:
        if self.tick_ms < 1 or self.flow_k < 1 or self.tank_ul < 0:
            raise ValueError("tick_ms and flow_k must be >= 1, tank_ul >= 0")
        if not 0.1 <= self.timescale <= 100:
            raise ValueError("timescale must be in [0.1, 100]")


def validate_key_label(label: str) -> Optional[str]:
    """Return an error message for labels outside the keypad alphabet."""
    if label not in LABEL_TO_KEY:
        return f"unknown key label {label!r}"
    return None


class SimDriver:
    """Single-writer owner of the simulated dispenser."""

    def __init__(self, settings: BridgeSettings):
        self.settings = settings
        self.timescale = settings.timescale
        self._sim = DispenserSim(
            tick_ms=settings.tick_ms,
            flow_k=settings.flow_k,
            tank_init_ul=settings.tank_ul,
        )
        self._inbox: deque[ClientMessage] = deque()
        self._release_at: dict[Contact, int] = {}
        self._last_sent: Optional[tuple] = None

    @property
    def tick_ms(self) -> int:
        return self._sim.tick_ms

    @property
    def now_ms(self) -> int:
        """Simulated time of the next tick to run."""
        return self._sim.now

    def enqueue(self, message: ClientMessage) -> None:
        self._inbox.append(message)

    def _apply(self, message: ClientMessage) -> None:
        if isinstance(message, KeyDown):
            contact = CONTACT_FOR_KEY[LABEL_TO_KEY[message.key]]
            self._sim.press(contact)
            self._release_at[contact] = self._sim.now + AUTO_RELEASE_MS
        elif isinstance(message, KeyUp):
            contact = CONTACT_FOR_KEY[LABEL_TO_KEY[message.key]]
            self._sim.release(contact)
            self._release_at.pop(contact, None)
        elif isinstance(message, SetTimescale):
            self.timescale = message.factor
        elif isinstance(message, Reset):
            self._sim.reset()
            # Held keys survive a reset; their watchdogs restart on the
            # rewound clock.
            self._release_at = {
                contact: self._sim.now + AUTO_RELEASE_MS
                for contact in self._release_at
            }

    def advance_tick(self) -> Optional[Snapshot]:
        """Apply one queued message, run one tick, and return a snapshot
        when anything beyond the clock changed.

        One message per tick keeps successive matrix edits at least one
        scan apart: a release followed instantly by another press still
        gives the debouncer the all-open scan it needs to re-arm.
        """
        if self._inbox:
            self._apply(self._inbox.popleft())
        for contact, deadline in list(self._release_at.items()):
            if self._sim.now >= deadline:
                self._sim.release(contact)
                del self._release_at[contact]
        self._sim.advance_tick()
        snap = self.snapshot()
        fingerprint = (
            snap.mode,
            tuple(snap.lcd),
            snap.motor,
            snap.dispensed_ul,
            snap.target_ul,
            snap.tank_ul,
            snap.timescale,
        )
        if fingerprint == self._last_sent:
            return None
        self._last_sent = fingerprint
        return snap

    def snapshot(self) -> Snapshot:
        sim = self._sim
        dispensing = sim.state.mode is Mode.DISPENSING
        return Snapshot(
            t_ms=sim.now,
            mode=sim.state.mode.value,
            lcd=list(sim.frame.rows),
            motor=sim.state.motor_running,
            dispensed_ul=sim.dispensed_ul,
            target_ul=sim.state.target_ul if dispensing else None,
            tank_ul=sim.tank_ul,
            timescale=self.timescale,
        )
