"""Server-authoritative session logic, independent of any transport.

One ``Session`` owns the graph state of a live plotting session: the
wizard injects equation transcriptions and a processing status, viewers
(and the wizard) steer the axes, and every state change re-meshes on the
server so all clients render the same truth. ``handle`` maps one incoming
frame to a list of ``(recipient, payload)`` pairs, where the recipient is
either the sending client key or ``BROADCAST``.

Callers must serialize calls per session (the websocket server funnels
them through one lock); client keys can be any hashable object.
"""

from __future__ import annotations

import uuid
from typing import Any, Hashable, Optional

from ..expr import ExpressionError, canonical_text, parse
from ..graphstate import GraphState, apply_command, set_equation
from ..mesh import ColorMap, DEFAULT_COLORMAP, build_mesh, sample_grid
from . import messages as wire

BROADCAST = "*"

Outgoing = tuple[Any, dict]


class Session:
    def __init__(
        self,
        state: Optional[GraphState] = None,
        colormap: ColorMap = DEFAULT_COLORMAP,
        session_id: Optional[str] = None,
    ):
        self.id = session_id or uuid.uuid4().hex
        self.state = state if state is not None else GraphState.initial()
        self.colormap = colormap
        self.status = wire.STATUS_IDLE
        self.revision = 0
        self.clients: dict[Hashable, str] = {}  # client key -> role
        self._equation_source: Optional[str] = None
        self._latest_mesh_payload: Optional[dict] = None

    # -- connection lifecycle ------------------------------------------------

    def disconnect(self, client: Hashable) -> None:
        """Forget a client; a departing wizard frees the role."""
        self.clients.pop(client, None)

    @property
    def wizard(self) -> Optional[Hashable]:
        for key, role in self.clients.items():
            if role == wire.ROLE_WIZARD:
                return key
        return None

    # -- frame handling --------------------------------------------------------

    def handle_text(self, client: Hashable, text: str) -> list[Outgoing]:
        try:
            payload = wire.decode_frame(text)
        except wire.WireError as exc:
            return [(client, wire.protocol_error(exc.code, exc.message))]
        return self.handle(client, payload)

    def handle(self, client: Hashable, payload: dict) -> list[Outgoing]:
        mtype = payload.get("type")
        if client not in self.clients:
            if mtype != "hello":
                return [(client, wire.protocol_error("need_hello", "first message must be hello"))]
            return self._handle_hello(client, payload)
        if mtype == "hello":
            return [(client, wire.protocol_error("bad_message", "already registered"))]
        if mtype == "set_equation":
            return self._handle_set_equation(client, payload)
        if mtype == "set_status":
            return self._handle_set_status(client, payload)
        if mtype == "view_command":
            return self._handle_view_command(client, payload)
        return [(client, wire.protocol_error("unknown_type", f"unknown message type {mtype!r}"))]

    def _handle_hello(self, client: Hashable, payload: dict) -> list[Outgoing]:
        version = payload.get("protocol_version")
        if version != wire.PROTOCOL_VERSION:
            return [(client, wire.protocol_error(
                "bad_version", f"server speaks protocol {wire.PROTOCOL_VERSION}, client sent {version!r}"
            ))]
        role = payload.get("role")
        if role not in (wire.ROLE_WIZARD, wire.ROLE_VIEWER):
            return [(client, wire.protocol_error("bad_message", f"unknown role {role!r}"))]
        if role == wire.ROLE_WIZARD and self.wizard is not None:
            return [(client, wire.protocol_error("wizard_taken", "session already has a wizard"))]
        self.clients[client] = role
        out: list[Outgoing] = [(client, wire.welcome(self.id))]
        if role == wire.ROLE_VIEWER:
            out.append((client, self.snapshot()))
        return out

    def _require_wizard(self, client: Hashable) -> Optional[dict]:
        if self.clients.get(client) != wire.ROLE_WIZARD:
            return wire.protocol_error("not_wizard", "only the wizard may send this")
        return None

    def _handle_set_equation(self, client: Hashable, payload: dict) -> list[Outgoing]:
        refusal = self._require_wizard(client)
        if refusal is not None:
            return [(client, refusal)]
        source = payload.get("source")
        if not isinstance(source, str):
            return [(client, wire.protocol_error("bad_message", "set_equation needs a string source"))]
        try:
            expr = parse(source)
        except ExpressionError as exc:
            update = wire.equation_update(
                source, None, {"position": exc.position, "reason": exc.reason}
            )
            return [(BROADCAST, update)]
        self.state = set_equation(self.state, expr)
        self._equation_source = source
        mesh_payload = self._remesh()
        self.status = wire.STATUS_IDLE
        return [
            (BROADCAST, wire.equation_update(source, canonical_text(expr), None)),
            (BROADCAST, mesh_payload),
            (BROADCAST, wire.status_update(self.status)),
        ]

    def _handle_set_status(self, client: Hashable, payload: dict) -> list[Outgoing]:
        refusal = self._require_wizard(client)
        if refusal is not None:
            return [(client, refusal)]
        status = payload.get("status")
        if status not in (wire.STATUS_IDLE, wire.STATUS_PROCESSING):
            return [(client, wire.protocol_error("bad_message", f"unknown status {status!r}"))]
        self.status = status
        return [(BROADCAST, wire.status_update(status))]

    def _handle_view_command(self, client: Hashable, payload: dict) -> list[Outgoing]:
        try:
            command = wire.decode_view_command(payload.get("command"))
            self.state = apply_command(self.state, command)
        except (wire.WireError, ValueError) as exc:
            code = exc.code if isinstance(exc, wire.WireError) else "bad_command"
            return [(client, wire.protocol_error(code, str(exc)))]
        if self.state.equation is None:
            return []  # axes move silently until an equation lands
        return [(BROADCAST, self._remesh())]

    # -- state assembly ---------------------------------------------------------

    def _remesh(self) -> dict:
        assert self.state.equation is not None
        field = sample_grid(self.state.equation, self.state.domain, self.state.resolution)
        mesh = build_mesh(self.state.equation, field, self.state.z_limits, self.colormap)
        self.revision += 1
        self._latest_mesh_payload = wire.mesh_update(self.revision, mesh)
        return self._latest_mesh_payload

    def snapshot(self) -> dict:
        """Late-joiner state: equals the fold of every broadcast so far."""
        equation = None
        if self.state.equation is not None:
            equation = {
                "source": self._equation_source,
                "canonical": canonical_text(self.state.equation),
            }
        return wire.snapshot(equation, self.status, self.state, self._latest_mesh_payload)
