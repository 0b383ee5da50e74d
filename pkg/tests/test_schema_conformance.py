"""Every frame the server produces must validate against the shared schema.

The same schema file drives the frontend's conformance tests, so a drift
on either side fails a build.
"""

import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from planebreaker.relay import Session
from planebreaker.relay import messages as wire

SCHEMA_PATH = Path(__file__).resolve().parents[1] / "frontend" / "schema" / "protocol.schema.json"
SCHEMA = json.loads(SCHEMA_PATH.read_text())
VALIDATOR = jsonschema.Draft7Validator(SCHEMA)


def check(payload):
    VALIDATOR.validate(payload)


def test_client_frames_validate():
    check({"type": "hello", "role": "wizard", "protocol_version": 1})
    check({"type": "hello", "role": "viewer", "protocol_version": 1})
    check({"type": "set_equation", "source": "z = sin(x) + cos(y)"})
    check({"type": "set_status", "status": "processing"})
    check({"type": "view_command", "command": {"action": "pan", "dx_steps": 1, "dy_steps": 0}})
    check({"type": "view_command",
           "command": {"action": "zoom", "direction": "in", "target": "z_axis"}})
    check({"type": "view_command", "command": {"action": "reset"}})


def test_malformed_client_frames_rejected_by_schema():
    for bad in (
        {"type": "hello", "role": "gamemaster", "protocol_version": 1},
        {"type": "set_status", "status": "loading"},
        {"type": "view_command", "command": {"action": "pan", "dx_steps": 101, "dy_steps": 0}},
        {"type": "view_command", "command": {"action": "warp"}},
        {"type": "mystery"},
    ):
        assert not VALIDATOR.is_valid(bad), bad


def test_server_frames_validate_through_a_session():
    session = Session(session_id="schema-test")
    frames = []
    frames.extend(p for _, p in session.handle(
        "w", {"type": "hello", "role": "wizard", "protocol_version": 1}))
    frames.extend(p for _, p in session.handle(
        "v", {"type": "hello", "role": "viewer", "protocol_version": 1}))
    frames.extend(p for _, p in session.handle(
        "w", {"type": "set_equation", "source": "z = sin(x) + cos(y)"}))
    frames.extend(p for _, p in session.handle(
        "w", {"type": "set_equation", "source": "sin("}))
    frames.extend(p for _, p in session.handle(
        "w", {"type": "set_status", "status": "processing"}))
    frames.extend(p for _, p in session.handle(
        "v", {"type": "view_command",
              "command": {"action": "zoom", "direction": "in", "target": "input_domain"}}))
    frames.extend(p for _, p in session.handle(
        "v", {"type": "view_command", "command": {"action": "pan", "dx_steps": 200, "dy_steps": 0}}))
    frames.extend(p for _, p in session.handle(
        "x", {"type": "set_equation", "source": "x"}))
    frames.append(session.snapshot())
    frames.append(Session().snapshot())  # fresh-session snapshot with nulls

    seen = set()
    for payload in frames:
        check(payload)
        seen.add(payload["type"])
        # frames must survive the wire encoding unchanged
        assert json.loads(wire.encode(payload)) == payload
    assert {"welcome", "snapshot", "equation_update", "mesh_update",
            "status_update", "protocol_error"} <= seen
