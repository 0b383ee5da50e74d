/**
 * Mesh preparation and WebGL drawing.
 *
 * `prepareMesh` / `buildAxisGeometry` are pure and unit-tested; `GlScene`
 * owns the GL objects. Incoming meshes are prepared off to the side and
 * swapped in with a single reference assignment, so a draw never sees a
 * partially applied update.
 */

import { Axes, MeshUpdate } from "./protocol.js";
import { Camera, Mat4, viewProjection } from "./camera.js";

export interface PreparedMesh {
  positions: Float32Array;
  normals: Float32Array;
  colors: Float32Array;
  indices: Uint32Array;
  vertexCount: number;
  triangleCount: number;
  label: string;
  revision: number;
}

export function prepareMesh(msg: MeshUpdate): PreparedMesh {
  const vertexCount = msg.positions.length / 3;
  if (
    msg.normals.length !== msg.positions.length ||
    msg.colors.length !== msg.positions.length
  ) {
    throw new Error("mesh arrays disagree on vertex count");
  }
  return {
    positions: new Float32Array(msg.positions),
    normals: new Float32Array(msg.normals),
    colors: new Float32Array(msg.colors),
    indices: new Uint32Array(msg.indices),
    vertexCount,
    triangleCount: msg.indices.length / 3,
    label: msg.label,
    revision: msg.revision,
  };
}

export interface TickAnchor {
  world: [number, number, number];
  label: string;
  axis: "x" | "y" | "z";
}

/**
 * Axis frame line segments plus tick label anchors. The x and y axis
 * lines lie at the bottom of the height range; the z axis rises at the
 * (x_min, y_min) corner.
 */
export function buildAxisGeometry(axes: Axes): { lines: Float32Array; anchors: TickAnchor[] } {
  const { x, y, z } = axes;
  const base = z.min;
  const segments: number[] = [];
  const anchors: TickAnchor[] = [];

  const push = (ax: number, ay: number, az: number, bx: number, by: number, bz: number) => {
    segments.push(ax, ay, az, bx, by, bz);
  };

  // frame
  push(x.min, y.min, base, x.max, y.min, base); // x axis
  push(x.min, y.min, base, x.min, y.max, base); // y axis
  push(x.min, y.min, base, x.min, y.min, z.max); // z axis

  const xTickLen = (y.max - y.min) * 0.03;
  const yTickLen = (x.max - x.min) * 0.03;
  const zTickLen = Math.min(xTickLen, yTickLen);

  for (const tick of x.ticks) {
    push(tick.value, y.min, base, tick.value, y.min - xTickLen, base);
    anchors.push({ world: [tick.value, y.min - 2.5 * xTickLen, base], label: tick.label, axis: "x" });
  }
  for (const tick of y.ticks) {
    push(x.min, tick.value, base, x.min - yTickLen, tick.value, base);
    anchors.push({ world: [x.min - 2.5 * yTickLen, tick.value, base], label: tick.label, axis: "y" });
  }
  for (const tick of z.ticks) {
    push(x.min, y.min, tick.value, x.min - zTickLen, y.min - zTickLen, tick.value);
    anchors.push({
      world: [x.min - 2.5 * zTickLen, y.min - 2.5 * zTickLen, tick.value],
      label: tick.label,
      axis: "z",
    });
  }
  return { lines: new Float32Array(segments), anchors };
}

const MESH_VERTEX_SHADER = `
attribute vec3 a_position;
attribute vec3 a_normal;
attribute vec3 a_color;
uniform mat4 u_view_projection;
varying vec3 v_color;
varying vec3 v_normal;
void main() {
  gl_Position = u_view_projection * vec4(a_position, 1.0);
  v_color = a_color;
  v_normal = a_normal;
}
`;

const MESH_FRAGMENT_SHADER = `
precision mediump float;
varying vec3 v_color;
varying vec3 v_normal;
const vec3 LIGHT = normalize(vec3(0.4, 0.25, 0.88));
void main() {
  float diffuse = abs(dot(normalize(v_normal), LIGHT));
  float lit = 0.35 + 0.65 * diffuse;
  gl_FragColor = vec4(v_color * lit, 1.0);
}
`;

const LINE_VERTEX_SHADER = `
attribute vec3 a_position;
uniform mat4 u_view_projection;
void main() {
  gl_Position = u_view_projection * vec4(a_position, 1.0);
}
`;

const LINE_FRAGMENT_SHADER = `
precision mediump float;
void main() {
  gl_FragColor = vec4(0.55, 0.55, 0.6, 1.0);
}
`;

function compile(gl: WebGLRenderingContext, kind: number, source: string): WebGLShader {
  const shader = gl.createShader(kind);
  if (!shader) throw new Error("cannot create shader");
  gl.shaderSource(shader, source);
  gl.compileShader(shader);
  if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
    throw new Error(`shader compile failed: ${gl.getShaderInfoLog(shader)}`);
  }
  return shader;
}

function link(gl: WebGLRenderingContext, vs: string, fs: string): WebGLProgram {
  const program = gl.createProgram();
  if (!program) throw new Error("cannot create program");
  gl.attachShader(program, compile(gl, gl.VERTEX_SHADER, vs));
  gl.attachShader(program, compile(gl, gl.FRAGMENT_SHADER, fs));
  gl.linkProgram(program);
  if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
    throw new Error(`program link failed: ${gl.getProgramInfoLog(program)}`);
  }
  return program;
}

export class GlScene {
  private gl: WebGLRenderingContext;
  private meshProgram: WebGLProgram;
  private lineProgram: WebGLProgram;
  private buffers: {
    positions: WebGLBuffer;
    normals: WebGLBuffer;
    colors: WebGLBuffer;
    indices: WebGLBuffer;
    lines: WebGLBuffer;
  };
  private current: PreparedMesh | null = null;
  private lineVertexCount = 0;

  constructor(gl: WebGLRenderingContext) {
    this.gl = gl;
    const ext = gl.getExtension("OES_element_index_uint");
    if (!ext) {
      // 16-bit indices cap at 65k vertices; the default wire mesh is 16k
      console.warn("OES_element_index_uint unavailable; large meshes may fail");
    }
    this.meshProgram = link(gl, MESH_VERTEX_SHADER, MESH_FRAGMENT_SHADER);
    this.lineProgram = link(gl, LINE_VERTEX_SHADER, LINE_FRAGMENT_SHADER);
    this.buffers = {
      positions: gl.createBuffer()!,
      normals: gl.createBuffer()!,
      colors: gl.createBuffer()!,
      indices: gl.createBuffer()!,
      lines: gl.createBuffer()!,
    };
    gl.enable(gl.DEPTH_TEST);
    gl.clearColor(0.07, 0.07, 0.1, 1.0);
  }

  /** Upload and atomically swap in a fully prepared mesh. */
  setMesh(mesh: PreparedMesh): void {
    const gl = this.gl;
    gl.bindBuffer(gl.ARRAY_BUFFER, this.buffers.positions);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.positions, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ARRAY_BUFFER, this.buffers.normals);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.normals, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ARRAY_BUFFER, this.buffers.colors);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.colors, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, this.buffers.indices);
    gl.bufferData(gl.ELEMENT_ARRAY_BUFFER, mesh.indices, gl.STATIC_DRAW);
    this.current = mesh;
  }

  setAxisLines(lines: Float32Array): void {
    const gl = this.gl;
    gl.bindBuffer(gl.ARRAY_BUFFER, this.buffers.lines);
    gl.bufferData(gl.ARRAY_BUFFER, lines, gl.STATIC_DRAW);
    this.lineVertexCount = lines.length / 3;
  }

  get mesh(): PreparedMesh | null {
    return this.current;
  }

  render(camera: Camera, width: number, height: number): void {
    const gl = this.gl;
    gl.viewport(0, 0, width, height);
    gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
    const vp = viewProjection(camera, width / Math.max(1, height));
    this.drawLines(vp);
    this.drawMesh(vp);
  }

  private bindAttribute(program: WebGLProgram, name: string, buffer: WebGLBuffer): void {
    const gl = this.gl;
    const location = gl.getAttribLocation(program, name);
    if (location < 0) return;
    gl.bindBuffer(gl.ARRAY_BUFFER, buffer);
    gl.enableVertexAttribArray(location);
    gl.vertexAttribPointer(location, 3, gl.FLOAT, false, 0, 0);
  }

  private drawMesh(vp: Mat4): void {
    const mesh = this.current;
    if (!mesh || mesh.triangleCount === 0) return;
    const gl = this.gl;
    gl.useProgram(this.meshProgram);
    gl.uniformMatrix4fv(gl.getUniformLocation(this.meshProgram, "u_view_projection"), false, vp);
    this.bindAttribute(this.meshProgram, "a_position", this.buffers.positions);
    this.bindAttribute(this.meshProgram, "a_normal", this.buffers.normals);
    this.bindAttribute(this.meshProgram, "a_color", this.buffers.colors);
    gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, this.buffers.indices);
    gl.drawElements(gl.TRIANGLES, mesh.indices.length, gl.UNSIGNED_INT, 0);
  }

  private drawLines(vp: Mat4): void {
    if (this.lineVertexCount === 0) return;
    const gl = this.gl;
    gl.useProgram(this.lineProgram);
    gl.uniformMatrix4fv(gl.getUniformLocation(this.lineProgram, "u_view_projection"), false, vp);
    this.bindAttribute(this.lineProgram, "a_position", this.buffers.lines);
    gl.drawArrays(gl.LINES, 0, this.lineVertexCount);
  }
}
