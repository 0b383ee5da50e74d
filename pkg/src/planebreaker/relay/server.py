"""WebSocket transport for the session core.

Serves the protocol on ``/ws`` (one JSON frame per text message) and the
viewer UI bundle on ``/``. All session mutations go through one asyncio
lock, so transitions are applied in arrival order and each re-mesh
finishes before the next command is handled.
"""

from __future__ import annotations

import asyncio
import logging
import socket
from pathlib import Path
from typing import Optional

import uvicorn
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles

from .messages import encode
from .session import BROADCAST, Session

logger = logging.getLogger("planebreaker.relay")

_PLACEHOLDER_PAGE = """<!DOCTYPE html>
<html>
  <head><title>planebreaker relay</title></head>
  <body>
    <h1>planebreaker relay is running</h1>
    <p>The WebSocket endpoint is at <code>/ws</code>. No viewer bundle is
    configured; start the server with <code>--static-dir frontend/dist</code>
    to serve the browser UI here.</p>
  </body>
</html>
"""


def create_app(session: Optional[Session] = None, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI()
    app.state.session = session or Session()

    @app.websocket("/ws")
    async def websocket_endpoint(ws: WebSocket):
        await ws.accept()
        session: Session = app.state.session
        lock: asyncio.Lock = app.state.lock
        try:
            while True:
                text = await ws.receive_text()
                async with lock:
                    outputs = session.handle_text(ws, text)
                    _log_frame(session, ws, text)
                    for target, payload in outputs:
                        frame = encode(payload)
                        if target is BROADCAST or target == BROADCAST:
                            await _broadcast(session, frame)
                        else:
                            await _send(target, frame)
        except WebSocketDisconnect:
            pass
        finally:
            async with app.state.lock:
                session.disconnect(ws)

    app.state.lock = asyncio.Lock()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="viewer")
    else:
        if static_dir is not None:
            logger.warning("static dir %s not found, serving placeholder page", static_dir)

        @app.get("/")
        async def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app


def _log_frame(session: Session, ws: WebSocket, text: str) -> None:
    # message types only, never payloads
    try:
        import json

        mtype = json.loads(text).get("type")
    except Exception:
        mtype = "<invalid>"
    logger.info("received %s (role=%s)", mtype, session.clients.get(ws, "unregistered"))


async def _send(ws: WebSocket, frame: str) -> None:
    try:
        await ws.send_text(frame)
    except Exception:  # client vanished mid-send; disconnect handler cleans up
        pass


async def _broadcast(session: Session, frame: str) -> None:
    for ws in list(session.clients):
        await _send(ws, frame)


def run_server(host: str, port: int, static_dir: Optional[str] = None) -> int:
    """Bind, serve until interrupted, and return a process exit code."""
    app = create_app(static_dir=static_dir)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
    except OSError as exc:
        logger.error("cannot bind %s:%s: %s", host, port, exc)
        sock.close()
        return 5
    logger.info("listening on %s:%s", host, port)
    config = uvicorn.Config(app, log_level="info")
    server = uvicorn.Server(config)
    try:
        server.run(sockets=[sock])
    except KeyboardInterrupt:
        pass  # uvicorn re-raises after its graceful shutdown finishes
    return 0
