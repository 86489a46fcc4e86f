"""WebSocket front door for live sessions.

One socket = one session. The client opens with a start message, the
session runs in a worker thread, and LiveMessages stream back in order.
Inbound calibration updates are queued to the session and acknowledged
through the same socket. Outbound flow is bounded: under backpressure
the oldest queued message is dropped rather than stalling the pipeline.
"""

from __future__ import annotations

import asyncio
import json
import queue
import threading

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .agents import AgentParams, ArmAgentParams
from .profile import CalibrationProfile
from .service import ConfigError, SessionConfig, run_session
from .simulate import GestureScript, Segment
from .wire import BACKEND

_SENTINEL = None
OUT_QUEUE_SIZE = 8192

_CONFIG_SCALARS = ("mode", "source", "seed", "pace", "rate_hz", "runs",
                   "trials_per_run", "arm_trials", "participant",
                   "session_id", "log_path", "log_events", "trace_hz",
                   "gain_m_per_px")


def config_from_dict(raw: dict) -> SessionConfig:
    """Build a SessionConfig from client JSON."""
    config = SessionConfig()
    for key in _CONFIG_SCALARS:
        if key in raw:
            setattr(config, key, raw[key])
    if "profile" in raw:
        config.profile = CalibrationProfile().merged(raw["profile"])
    if "agent" in raw:
        config.agent = AgentParams(**raw["agent"])
    if "arm_agent" in raw:
        config.arm_agent = ArmAgentParams(**raw["arm_agent"])
    if "script" in raw:
        config.script = GestureScript(tuple(
            Segment(**seg) for seg in raw["script"]))
    if "noise" in raw:
        from .simulate import NoiseModel
        config.noise = NoiseModel(**raw["noise"])
    config.validate()
    return config


def create_app() -> FastAPI:
    app = FastAPI(title="chinpoint session service")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "wire_backend": BACKEND}

    @app.websocket("/ws")
    async def ws_session(websocket: WebSocket) -> None:
        await websocket.accept()
        try:
            first = await websocket.receive_json()
        except WebSocketDisconnect:
            return
        if not isinstance(first, dict) or first.get("type") != "start":
            await websocket.send_text(json.dumps(
                {"type": "error", "reason": "first message must be start"}))
            await websocket.close()
            return
        try:
            config = config_from_dict(first.get("config") or {})
        except (ConfigError, TypeError, ValueError) as exc:
            await websocket.send_text(json.dumps(
                {"type": "error", "reason": str(exc)}))
            await websocket.close()
            return

        loop = asyncio.get_running_loop()
        out_q: asyncio.Queue = asyncio.Queue(maxsize=OUT_QUEUE_SIZE)
        control: queue.Queue = queue.Queue()
        stop = threading.Event()

        def enqueue(msg) -> None:
            if out_q.full():
                try:
                    out_q.get_nowait()  # shed oldest under backpressure
                except asyncio.QueueEmpty:
                    pass
            out_q.put_nowait(msg)

        def on_message(msg: dict) -> None:
            loop.call_soon_threadsafe(enqueue, msg)

        def worker() -> None:
            try:
                summary = run_session(config, on_message=on_message,
                                      control=control, stop=stop)
            except Exception as exc:  # surface, don't kill the socket loop
                loop.call_soon_threadsafe(
                    enqueue, {"type": "error", "reason": str(exc)})
            loop.call_soon_threadsafe(enqueue, _SENTINEL)

        thread = threading.Thread(target=worker, daemon=True)
        thread.start()

        async def sender() -> None:
            while True:
                msg = await out_q.get()
                if msg is _SENTINEL:
                    break
                await websocket.send_text(json.dumps(msg))

        async def receiver() -> None:
            while True:
                data = await websocket.receive_json()
                if isinstance(data, dict):
                    control.put(data)
                    if data.get("type") == "stop":
                        stop.set()

        send_task = asyncio.ensure_future(sender())
        recv_task = asyncio.ensure_future(receiver())
        done, pending = await asyncio.wait(
            {send_task, recv_task}, return_when=asyncio.FIRST_COMPLETED)
        stop.set()
        for task in pending:
            task.cancel()
        for task in done:
            exc = task.exception()
            if exc is not None and not isinstance(
                    exc, (WebSocketDisconnect, RuntimeError)):
                raise exc
        thread.join(timeout=10.0)
        try:
            await websocket.close()
        except RuntimeError:
            pass  # already closed by the peer

    return app


app = create_app()
