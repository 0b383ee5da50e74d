import { Ajv } from "ajv";
import { describe, expect, it } from "vitest";

import {
  applyServerMessage,
  decodeServerFrame,
  emptyFold,
  FoldState,
  hello,
  MeshUpdate,
  ServerMessage,
  Snapshot,
} from "../src/protocol.js";

import { loadJson, loadWalkthrough } from "./helpers.js";

const fixture = loadWalkthrough();
const schema = loadJson<object>("schema/protocol.schema.json");

const BROADCAST_TYPES = new Set(["equation_update", "status_update", "mesh_update"]);

function broadcastFrames(): ServerMessage[] {
  return fixture.steps.flatMap((step) => step.frames.filter((f) => BROADCAST_TYPES.has(f.type)));
}

function lateSnapshot(): Snapshot {
  const last = fixture.steps[fixture.steps.length - 1];
  const snap = last.frames.find((f) => f.type === "snapshot");
  if (!snap) throw new Error("fixture is missing the late-joiner snapshot");
  return snap as Snapshot;
}

describe("fold", () => {
  it("matches the late joiner snapshot after folding every broadcast", () => {
    let state: FoldState = emptyFold();
    for (const frame of broadcastFrames()) {
      state = applyServerMessage(state, frame);
    }
    const snap = lateSnapshot();
    expect(state.equation).toEqual(snap.equation);
    expect(state.status).toEqual(snap.status);
    expect(state.mesh).toEqual(snap.mesh);
  });

  it("keeps the previous surface when a transcription fails to parse", () => {
    let state: FoldState = emptyFold();
    const goodFrames = fixture.steps[3].frames; // first successful equation
    for (const frame of goodFrames) state = applyServerMessage(state, frame);
    const before = { equation: state.equation, mesh: state.mesh };

    const badFrame = fixture.steps[10].frames[0];
    expect(badFrame.type).toBe("equation_update");
    state = applyServerMessage(state, badFrame);
    expect(state.equation).toEqual(before.equation);
    expect(state.mesh).toBe(before.mesh);
    expect(state.lastError).not.toBeNull();
    expect(state.lastError?.position).toBe(4);
  });

  it("observes gapless, strictly increasing mesh revisions", () => {
    const revisions = broadcastFrames()
      .filter((f): f is MeshUpdate => f.type === "mesh_update")
      .map((f) => f.revision);
    expect(revisions.length).toBeGreaterThanOrEqual(6);
    expect(revisions).toEqual(revisions.map((_, i) => i + 1));
  });

  it("applies a snapshot wholesale", () => {
    const state = applyServerMessage(emptyFold(), lateSnapshot());
    expect(state.mesh?.label).toBe("z = ((3 * sin(x)) + cos(y))");
    expect(state.graphState?.segments).toBe(fixture.segments);
  });
});

describe("decodeServerFrame", () => {
  it("accepts every fixture frame", () => {
    for (const step of fixture.steps) {
      for (const frame of step.frames) {
        expect(decodeServerFrame(JSON.stringify(frame)).type).toBe(frame.type);
      }
    }
  });

  it("rejects garbage", () => {
    expect(() => decodeServerFrame("not json")).toThrow();
    expect(() => decodeServerFrame('"just a string"')).toThrow();
    expect(() => decodeServerFrame('{"type": "mystery"}')).toThrow();
  });
});

describe("schema conformance (shared contract)", () => {
  const ajv = new Ajv({ allowUnionTypes: true });
  const validate = ajv.compile(schema);

  it("every server frame in the fixture validates", () => {
    for (const step of fixture.steps) {
      for (const frame of step.frames) {
        const ok = validate(frame);
        expect(ok, `${step.note}: ${JSON.stringify(validate.errors)}`).toBe(true);
      }
    }
  });

  it("the client messages this app sends validate", () => {
    const samples = [
      hello("viewer"),
      hello("wizard"),
      { type: "set_equation", source: "z = sin(x) + cos(y)" },
      { type: "set_status", status: "processing" },
      { type: "view_command", command: { action: "pan", dx_steps: 1, dy_steps: 0 } },
      { type: "view_command", command: { action: "zoom", direction: "in", target: "z_axis" } },
      { type: "view_command", command: { action: "reset" } },
    ];
    for (const msg of samples) {
      expect(validate(msg), JSON.stringify(validate.errors)).toBe(true);
    }
  });

  it("rejects out-of-contract messages", () => {
    expect(validate({ type: "set_status", status: "thinking" })).toBe(false);
    expect(
      validate({ type: "view_command", command: { action: "pan", dx_steps: 101, dy_steps: 0 } }),
    ).toBe(false);
  });
});
