"""Transcript entries and their byte-deterministic renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .keys import Key
from .peripherals import MotorMode


@dataclass(frozen=True)
class KeyAccepted:
    at: int
    key: Key


@dataclass(frozen=True)
class MotorEdge:
    at: int
    mode: MotorMode


@dataclass(frozen=True)
class LcdSnapshot:
    at: int
    rows: tuple[str, str, str, str]


@dataclass(frozen=True)
class Final:
    at: int
    dispensed_ul: int
    tank_ul: int


Entry = KeyAccepted | MotorEdge | LcdSnapshot | Final


@dataclass(frozen=True)
class Transcript:
    """Ordered, timestamped record of one run; exactly one Final, last."""

    tick_ms: int
    entries: tuple[Entry, ...]

    @property
    def final(self) -> Final:
        last = self.entries[-1]
        assert isinstance(last, Final)
        return last

    def motor_edges(self) -> list[MotorEdge]:
        return [e for e in self.entries if isinstance(e, MotorEdge)]


def _text_lines(transcript: Transcript) -> list[str]:
    lines = []
    for entry in transcript.entries:
        if isinstance(entry, KeyAccepted):
            lines.append(f"@{entry.at:08d} KEY {entry.key.value}")
        elif isinstance(entry, MotorEdge):
            lines.append(f"@{entry.at:08d} MOTOR {entry.mode.value}")
        elif isinstance(entry, LcdSnapshot):
            lines.append(f"@{entry.at:08d} LCD |" + "|".join(entry.rows) + "|")
        else:
            lines.append(
                f"FINAL dispensed_uL={entry.dispensed_ul} tank_uL={entry.tank_ul}"
            )
    return lines


def _structured_doc(transcript: Transcript) -> dict:
    entries = []
    for entry in transcript.entries:
        if isinstance(entry, KeyAccepted):
            entries.append({"at": entry.at, "type": "key", "key": entry.key.value})
        elif isinstance(entry, MotorEdge):
            entries.append({"at": entry.at, "type": "motor", "state": entry.mode.value})
        elif isinstance(entry, LcdSnapshot):
            entries.append({"at": entry.at, "type": "lcd", "rows": list(entry.rows)})
        else:
            entries.append(
                {
                    "at": entry.at,
                    "type": "final",
                    "dispensed_ul": entry.dispensed_ul,
                    "tank_ul": entry.tank_ul,
                }
            )
    return {
        "format": "dispensim-transcript",
        "tick_ms": transcript.tick_ms,
        "entries": entries,
    }


def format_transcript(transcript: Transcript, mode: str = "text") -> bytes:
    """Render a transcript to bytes; the same transcript always renders
    to the same bytes."""
    if mode == "text":
        return ("\n".join(_text_lines(transcript)) + "\n").encode("ascii")
    if mode == "structured":
        doc = _structured_doc(transcript)
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode("ascii")
    raise ValueError(f"unknown transcript format: {mode!r}")
