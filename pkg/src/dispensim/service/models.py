"""Wire-protocol messages for the live bridge.

Every message is a single JSON object carrying a "type" field.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter


class KeyDown(BaseModel):
    type: Literal["key_down"]
    key: str


class KeyUp(BaseModel):
    type: Literal["key_up"]
    key: str


class SetTimescale(BaseModel):
    type: Literal["set_timescale"]
    factor: float = Field(ge=0.1, le=100)


class Reset(BaseModel):
    type: Literal["reset"]


ClientMessage = Annotated[
    Union[KeyDown, KeyUp, SetTimescale, Reset],
    Field(discriminator="type"),
]

CLIENT_MESSAGE_ADAPTER: TypeAdapter[ClientMessage] = TypeAdapter(ClientMessage)


class Snapshot(BaseModel):
    type: Literal["snapshot"] = "snapshot"
    t_ms: int
    mode: str
    lcd: list[str]
    motor: bool
    dispensed_ul: int
    target_ul: Optional[int] = None
    tank_ul: int
    timescale: float


class ErrorReply(BaseModel):
    type: Literal["error"] = "error"
    message: str
