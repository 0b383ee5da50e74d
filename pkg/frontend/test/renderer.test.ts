import { describe, expect, it } from "vitest";

import { GlScene, buildAxisGeometry, prepareMesh } from "../src/renderer.js";
import { defaultCamera } from "../src/camera.js";
import { MeshUpdate, ServerMessage } from "../src/protocol.js";

import { loadWalkthrough } from "./helpers.js";

const fixture = loadWalkthrough();

function firstMeshUpdate(): MeshUpdate {
  for (const step of fixture.steps) {
    for (const frame of step.frames) {
      if (frame.type === "mesh_update") return frame;
    }
  }
  throw new Error("fixture has no mesh_update");
}

describe("prepareMesh", () => {
  it("vertex count is exactly positions.length / 3", () => {
    const msg = firstMeshUpdate();
    const prepared = prepareMesh(msg);
    expect(prepared.vertexCount).toBe(msg.positions.length / 3);
    expect(prepared.vertexCount).toBe((fixture.segments + 1) ** 2);
    expect(prepared.triangleCount).toBe(2 * fixture.segments ** 2);
    expect(prepared.label).toBe(msg.label);
  });

  it("rejects arrays that disagree on vertex count", () => {
    const msg = firstMeshUpdate();
    const broken = { ...msg, normals: msg.normals.slice(0, 3) };
    expect(() => prepareMesh(broken)).toThrow();
  });
});

describe("buildAxisGeometry", () => {
  it("produces one anchor per tick", () => {
    const axes = firstMeshUpdate().axes;
    const { lines, anchors } = buildAxisGeometry(axes);
    const tickTotal = axes.x.ticks.length + axes.y.ticks.length + axes.z.ticks.length;
    expect(anchors.length).toBe(tickTotal);
    expect(anchors.map((a) => a.label)).toContain("-5");
    // 3 frame segments + one segment per tick, 6 floats each
    expect(lines.length).toBe((3 + tickTotal) * 6);
  });

  it("pins x anchors to the tick value", () => {
    const axes = firstMeshUpdate().axes;
    const { anchors } = buildAxisGeometry(axes);
    const xAnchors = anchors.filter((a) => a.axis === "x");
    expect(xAnchors.map((a) => a.world[0])).toEqual(axes.x.ticks.map((t) => t.value));
  });
});

// --- GlScene against a recording stub ---------------------------------------

class FakeGl {
  VERTEX_SHADER = 1;
  FRAGMENT_SHADER = 2;
  COMPILE_STATUS = 3;
  LINK_STATUS = 4;
  ARRAY_BUFFER = 5;
  ELEMENT_ARRAY_BUFFER = 6;
  STATIC_DRAW = 7;
  DEPTH_TEST = 8;
  COLOR_BUFFER_BIT = 16;
  DEPTH_BUFFER_BIT = 32;
  TRIANGLES = 9;
  LINES = 10;
  FLOAT = 11;
  UNSIGNED_INT = 12;

  draws: { mode: number; count: number }[] = [];
  uploads: number[] = [];

  getExtension() { return {}; }
  createShader() { return {}; }
  shaderSource() {}
  compileShader() {}
  getShaderParameter() { return true; }
  getShaderInfoLog() { return ""; }
  createProgram() { return {}; }
  attachShader() {}
  linkProgram() {}
  getProgramParameter() { return true; }
  getProgramInfoLog() { return ""; }
  createBuffer() { return {}; }
  bindBuffer() {}
  bufferData(_target: number, data: { length: number }) { this.uploads.push(data.length); }
  enable() {}
  clearColor() {}
  viewport() {}
  clear() {}
  useProgram() {}
  getUniformLocation() { return {}; }
  uniformMatrix4fv() {}
  getAttribLocation() { return 0; }
  enableVertexAttribArray() {}
  vertexAttribPointer() {}
  drawElements(mode: number, count: number) { this.draws.push({ mode, count }); }
  drawArrays(mode: number, _first: number, count: number) { this.draws.push({ mode, count }); }
}

describe("GlScene", () => {
  it("draws exactly the uploaded indices", () => {
    const gl = new FakeGl();
    const scene = new GlScene(gl as unknown as WebGLRenderingContext);
    const msg = firstMeshUpdate();
    scene.setMesh(prepareMesh(msg));
    scene.setAxisLines(buildAxisGeometry(msg.axes).lines);
    scene.render(defaultCamera(), 800, 600);

    const triangleDraw = gl.draws.find((d) => d.mode === gl.TRIANGLES);
    expect(triangleDraw?.count).toBe(msg.indices.length);
    const lineDraw = gl.draws.find((d) => d.mode === gl.LINES);
    expect(lineDraw).toBeDefined();
  });

  it("skips the surface draw for an empty mesh", () => {
    const gl = new FakeGl();
    const scene = new GlScene(gl as unknown as WebGLRenderingContext);
    const msg = firstMeshUpdate();
    scene.setMesh(prepareMesh({ ...msg, positions: [], normals: [], colors: [], indices: [] }));
    scene.render(defaultCamera(), 800, 600);
    expect(gl.draws.filter((d) => d.mode === gl.TRIANGLES)).toHaveLength(0);
  });
});
