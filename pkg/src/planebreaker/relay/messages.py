"""Wire format of the relay protocol.

Every frame is one UTF-8 JSON object with a ``type`` tag.

Client to server:
    hello         {role: "wizard"|"viewer", protocol_version: 1}
    set_equation  {source: str}                      (wizard only)
    set_status    {status: "idle"|"processing"}      (wizard only)
    view_command  {command: {action: "pan", dx_steps, dy_steps}
                          | {action: "zoom", direction: "in"|"out",
                             target: "input_domain"|"z_axis"}
                          | {action: "reset"}}

Server to client:
    welcome          {session_id, protocol_version}
    equation_update  {source, canonical, error: null|{position, reason}}
    status_update    {status}
    mesh_update      {revision, positions[], normals[], colors[],
                      indices[], axes, label}   (flat number arrays)
    snapshot         {equation: null|{source, canonical}, status,
                      graph_state, mesh: null|<mesh_update payload>}
    protocol_error   {code, message}

Mesh floats are rounded to 6 decimals on the wire, matching OBJ export
precision. The schema is mirrored in ``frontend/schema/protocol.schema.json``.
"""

from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from ..graphstate import AxisTarget, GraphState, Pan, Reset, ViewCommand, Zoom, ZoomDirection
from ..mesh import AxisMetadata, SurfaceMesh

PROTOCOL_VERSION = 1

ROLE_WIZARD = "wizard"
ROLE_VIEWER = "viewer"
STATUS_IDLE = "idle"
STATUS_PROCESSING = "processing"

CLIENT_TYPES = ("hello", "set_equation", "set_status", "view_command")


class WireError(ValueError):
    """A malformed or illegal frame; maps onto a protocol_error message."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def encode(payload: dict) -> str:
    return json.dumps(payload, separators=(",", ":"), allow_nan=False)


def decode_frame(text: str) -> dict:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireError("bad_message", f"frame is not valid JSON: {exc.msg}") from exc
    if not isinstance(payload, dict):
        raise WireError("bad_message", "frame must be a JSON object")
    if not isinstance(payload.get("type"), str):
        raise WireError("bad_message", "frame needs a string 'type' field")
    return payload


# --------------------------------------------------------------------------
# view command codec (the canonical JSON encoding of graphstate commands)

def encode_view_command(command: ViewCommand) -> dict:
    if isinstance(command, Pan):
        return {"action": "pan", "dx_steps": command.dx_steps, "dy_steps": command.dy_steps}
    if isinstance(command, Zoom):
        return {
            "action": "zoom",
            "direction": command.direction.value,
            "target": command.target.value,
        }
    if isinstance(command, Reset):
        return {"action": "reset"}
    raise TypeError(f"not a view command: {command!r}")


def decode_view_command(obj: Any) -> ViewCommand:
    if not isinstance(obj, dict):
        raise WireError("bad_command", "command must be an object")
    action = obj.get("action")
    if action == "pan":
        dx, dy = obj.get("dx_steps"), obj.get("dy_steps")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (dx, dy)):
            raise WireError("bad_command", "pan needs integer dx_steps and dy_steps")
        return Pan(dx, dy)
    if action == "zoom":
        try:
            direction = ZoomDirection(obj.get("direction"))
            target = AxisTarget(obj.get("target"))
        except ValueError as exc:
            raise WireError("bad_command", "zoom needs direction in/out and a valid target") from exc
        return Zoom(direction, target)
    if action == "reset":
        return Reset()
    raise WireError("bad_command", f"unknown action {action!r}")


# --------------------------------------------------------------------------
# server -> client payload builders

def welcome(session_id: str) -> dict:
    return {"type": "welcome", "session_id": session_id, "protocol_version": PROTOCOL_VERSION}


def protocol_error(code: str, message: str) -> dict:
    return {"type": "protocol_error", "code": code, "message": message}


def equation_update(source: str, canonical: Optional[str], error: Optional[dict] = None) -> dict:
    return {"type": "equation_update", "source": source, "canonical": canonical, "error": error}


def status_update(status: str) -> dict:
    return {"type": "status_update", "status": status}


def _round_flat(arr: np.ndarray) -> list:
    return np.round(np.asarray(arr, dtype=np.float64), 6).reshape(-1).tolist()


def encode_axes(axes: AxisMetadata) -> dict:
    out = {}
    for name in ("x", "y", "z"):
        axis = getattr(axes, name)
        out[name] = {
            "min": axis.min,
            "max": axis.max,
            "ticks": [{"value": t.value, "label": t.label} for t in axis.ticks],
        }
    return out


def mesh_update(revision: int, mesh: SurfaceMesh) -> dict:
    return {
        "type": "mesh_update",
        "revision": revision,
        "positions": _round_flat(mesh.positions),
        "normals": _round_flat(mesh.normals),
        "colors": _round_flat(mesh.colors),
        "indices": mesh.indices.reshape(-1).tolist(),
        "axes": encode_axes(mesh.axes),
        "label": mesh.label,
    }


def encode_graph_state(state: GraphState) -> dict:
    return {
        "domain": {
            "x_min": state.domain.x_min,
            "x_max": state.domain.x_max,
            "y_min": state.domain.y_min,
            "y_max": state.domain.y_max,
        },
        "z_limits": {"z_min": state.z_limits.z_min, "z_max": state.z_limits.z_max},
        "segments": state.resolution.segments,
    }


def snapshot(
    equation: Optional[dict],
    status: str,
    state: GraphState,
    mesh_payload: Optional[dict],
) -> dict:
    return {
        "type": "snapshot",
        "equation": equation,
        "status": status,
        "graph_state": encode_graph_state(state),
        "mesh": mesh_payload,
    }
