"""HTTP/WebSocket front of the live bridge.

A single pacing task advances the driver one tick every
tick_ms / timescale of wall time and broadcasts snapshots; WebSocket
sessions only enqueue messages and drain their own outbound queues.
"""

from __future__ import annotations

import asyncio
import contextlib
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from pydantic import ValidationError

from .driver import BridgeSettings, SimDriver, validate_key_label
from .models import CLIENT_MESSAGE_ADAPTER, ErrorReply, KeyDown, KeyUp, Snapshot

HEARTBEAT_S = 0.25
CLIENT_QUEUE_LIMIT = 64
MAX_LAG_S = 0.5

Outbound = Union[Snapshot, ErrorReply]


def _offer(queue: "asyncio.Queue[Outbound]", item: Outbound) -> None:
    """Enqueue without blocking; drop the oldest entry when full."""
    while True:
        try:
            queue.put_nowait(item)
            return
        except asyncio.QueueFull:
            with contextlib.suppress(asyncio.QueueEmpty):
                queue.get_nowait()


def create_app(
    settings: Optional[BridgeSettings] = None,
    static_dir: Optional[Path] = None,
) -> FastAPI:
    settings = settings or BridgeSettings()
    driver = SimDriver(settings)
    clients: "set[asyncio.Queue[Outbound]]" = set()

    def broadcast(snapshot: Snapshot) -> None:
        for queue in clients:
            _offer(queue, snapshot)

    async def pace() -> None:
        loop = asyncio.get_running_loop()
        next_tick = loop.time()
        last_broadcast = loop.time()
        while True:
            now = loop.time()
            if now >= next_tick:
                next_tick += driver.tick_ms / 1000.0 / driver.timescale
                if now - next_tick > MAX_LAG_S:
                    next_tick = now
                snapshot = driver.advance_tick()
                if snapshot is not None:
                    broadcast(snapshot)
                    last_broadcast = loop.time()
                await asyncio.sleep(0)
                continue
            if now - last_broadcast >= HEARTBEAT_S:
                broadcast(driver.snapshot())
                last_broadcast = now
            await asyncio.sleep(max(0.0, min(next_tick - now, HEARTBEAT_S)))

    @contextlib.asynccontextmanager
    async def lifespan(_: FastAPI):
        task = asyncio.create_task(pace())
        try:
            yield
        finally:
            task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await task

    app = FastAPI(title="dispensim bridge", lifespan=lifespan)

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok", "service": "dispensim-bridge"}

    @app.websocket("/ws")
    async def ws_session(websocket: WebSocket) -> None:
        await websocket.accept()
        queue: "asyncio.Queue[Outbound]" = asyncio.Queue(maxsize=CLIENT_QUEUE_LIMIT)
        _offer(queue, driver.snapshot())
        clients.add(queue)

        async def drain() -> None:
            while True:
                item = await queue.get()
                await websocket.send_text(item.model_dump_json())

        sender = asyncio.create_task(drain())
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    message = CLIENT_MESSAGE_ADAPTER.validate_json(raw)
                except ValidationError as exc:
                    first = exc.errors()[0]
                    _offer(queue, ErrorReply(message=f"bad message: {first['msg']}"))
                    continue
                if isinstance(message, (KeyDown, KeyUp)):
                    problem = validate_key_label(message.key)
                    if problem is not None:
                        _offer(queue, ErrorReply(message=problem))
                        continue
                driver.enqueue(message)
        except WebSocketDisconnect:
            pass
        finally:
            clients.discard(queue)
            sender.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await sender

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="panel")

    return app
