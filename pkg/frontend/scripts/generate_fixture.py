#!/usr/bin/env python3
"""Regenerate test/fixtures/walkthrough.json from a live in-process session.

Run from the frontend directory with the planebreaker package installed:

    python3 scripts/generate_fixture.py

The frontend tests replay these recorded frames, so regenerate after any
wire-format change (and re-run both test suites).
"""

import json
from pathlib import Path

from planebreaker.graphstate import GraphState
from planebreaker.mesh import DEFAULT_DOMAIN, DEFAULT_Z_LIMITS, Resolution
from planebreaker.relay import Session

SEGMENTS = 16

SCRIPT = [
    ("wizard joins", "w", {"type": "hello", "role": "wizard", "protocol_version": 1}),
    ("viewer joins fresh session", "v", {"type": "hello", "role": "viewer", "protocol_version": 1}),
    ("wizard starts transcription", "w", {"type": "set_status", "status": "processing"}),
    ("wizard submits first equation", "w",
     {"type": "set_equation", "source": "z = sin(x) + cos(y)"}),
    ("wizard starts second transcription", "w", {"type": "set_status", "status": "processing"}),
    ("wizard submits modified equation", "w",
     {"type": "set_equation", "source": "z = 3sin(x) + cos(y)"}),
    ("viewer zooms input domain in", "v",
     {"type": "view_command",
      "command": {"action": "zoom", "direction": "in", "target": "input_domain"}}),
    ("viewer pans +x", "v",
     {"type": "view_command", "command": {"action": "pan", "dx_steps": 1, "dy_steps": 0}}),
    ("viewer zooms z out", "v",
     {"type": "view_command",
      "command": {"action": "zoom", "direction": "out", "target": "z_axis"}}),
    ("viewer resets axes", "v",
     {"type": "view_command", "command": {"action": "reset"}}),
    ("wizard submits a bad transcription", "w", {"type": "set_equation", "source": "sin("}),
    ("late viewer joins", "late", {"type": "hello", "role": "viewer", "protocol_version": 1}),
]


def main():
    state = GraphState.initial(DEFAULT_DOMAIN, DEFAULT_Z_LIMITS, Resolution(SEGMENTS))
    session = Session(state=state, session_id="fixture")
    steps = []
    for note, client, message in SCRIPT:
        outputs = session.handle(client, message)
        steps.append({"note": note, "frames": [payload for _, payload in outputs]})

    path = Path(__file__).resolve().parents[1] / "test" / "fixtures" / "walkthrough.json"
    with path.open("w") as fh:
        json.dump({"segments": SEGMENTS, "steps": steps}, fh)
        fh.write("\n")
    print(f"wrote {path} ({path.stat().st_size} bytes, {len(steps)} steps)")


if __name__ == "__main__":
    main()
