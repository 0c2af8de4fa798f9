"""Live bridge: FastAPI app plus its deterministic simulation driver."""

from .app import create_app
from .driver import AUTO_RELEASE_MS, BridgeSettings, SimDriver, validate_key_label
from .models import (
    CLIENT_MESSAGE_ADAPTER,
    ClientMessage,
    ErrorReply,
    KeyDown,
    KeyUp,
    Reset,
    SetTimescale,
    Snapshot,
)

__all__ = [
    "AUTO_RELEASE_MS",
    "BridgeSettings",
    "CLIENT_MESSAGE_ADAPTER",
    "ClientMessage",
    "ErrorReply",
    "KeyDown",
    "KeyUp",
    "Reset",
    "SetTimescale",
    "SimDriver",
    "Snapshot",
    "create_app",
    "validate_key_label",
]
