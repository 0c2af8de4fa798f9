"""Logical keypad symbols and the label alphabet shared by all front ends."""

from enum import Enum


class Key(Enum):
    """One of the 16 logical keys on the 4x4 pad."""

    D0 = "0"
    D1 = "1"
    D2 = "2"
    D3 = "3"
    D4 = "4"
    D5 = "5"
    D6 = "6"
    D7 = "7"
    D8 = "8"
    D9 = "9"
    DOT = "DOT"
    CONFIRM = "CONFIRM"
    BACKSPACE = "BACKSPACE"
    CLEAR = "CLEAR"
    STOP = "STOP"
    RESERVED = "RESERVED"

    @property
    def digit(self) -> str | None:
        """The digit character for D0..D9, None for everything else."""
        return self.value if len(self.value) == 1 else None


# Labels as printed on the physical keys. '.' is accepted as an alias for
# the 'C' key, which carries the decimal point.
LABEL_TO_KEY = {
    "0": Key.D0,
    "1": Key.D1,
    "2": Key.D2,
    "3": Key.D3,
    "4": Key.D4,
    "5": Key.D5,
    "6": Key.D6,
    "7": Key.D7,
    "8": Key.D8,
    "9": Key.D9,
    "A": Key.CONFIRM,
    "B": Key.BACKSPACE,
    "C": Key.DOT,
    "D": Key.RESERVED,
    "*": Key.CLEAR,
    "#": Key.STOP,
    ".": Key.DOT,
}
