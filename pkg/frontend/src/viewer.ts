/**
 * The viewer page: WebGL surface, axis tick labels, function label,
 * processing overlay, and the keyboard/mouse controls.
 *
 * Every mathematical change round-trips through the relay; the only local
 * state is the camera. Geometry is exactly what the last mesh_update
 * carried (vertex count = positions.length / 3, nothing synthesized).
 */

import { Camera, defaultCamera, dolly, grab, orbit, project, viewProjection } from "./camera.js";
import { RelayConnection, SocketFactory } from "./connection.js";
import { attachInput } from "./input.js";
import { GlScene, PreparedMesh, TickAnchor, buildAxisGeometry, prepareMesh } from "./renderer.js";
import {
  Command,
  FoldState,
  ServerMessage,
  applyServerMessage,
  emptyFold,
} from "./protocol.js";

export const PROCESSING_TEXT = "OCR Processing…";
export const EMPTY_MESH_TEXT = "no surface in range";

export interface ViewerOptions {
  socketFactory?: SocketFactory;
  reconnectDelayMs?: number;
  /** Override to skip real WebGL (tests, headless). */
  createScene?: (canvas: HTMLCanvasElement) => GlScene | null;
  /** Frame scheduler; defaults to requestAnimationFrame. */
  scheduleFrame?: (callback: () => void) => void;
}

function defaultCreateScene(canvas: HTMLCanvasElement): GlScene | null {
  const gl =
    (canvas.getContext("webgl") as WebGLRenderingContext | null) ??
    (canvas.getContext("experimental-webgl") as WebGLRenderingContext | null);
  return gl ? new GlScene(gl) : null;
}

export class ViewerApp {
  state: FoldState = emptyFold();
  camera: Camera = defaultCamera();
  readonly connection: RelayConnection;

  private root: HTMLElement;
  private canvas: HTMLCanvasElement;
  private scene: GlScene | null;
  private prepared: PreparedMesh | null = null;
  private anchors: TickAnchor[] = [];
  private scheduleFrame: (callback: () => void) => void;
  private frameQueued = false;
  private label: HTMLElement;
  private overlay: HTMLElement;
  private banner: HTMLElement;
  private notice: HTMLElement;
  private tickLayer: HTMLElement;
  private detach: () => void;

  constructor(root: HTMLElement, url: string, options: ViewerOptions = {}) {
    this.root = root;
    root.innerHTML = `
      <div class="stage">
        <canvas class="surface" tabindex="0"></canvas>
        <div class="tick-layer"></div>
        <div class="function-label"></div>
        <div class="empty-notice hidden"></div>
        <div class="processing-overlay hidden"></div>
        <div class="banner hidden"></div>
        <div class="help">drag orbit &middot; shift-drag grab &middot; arrows pan &middot; +/&minus; zoom &middot; Z+/&minus; height &middot; R reset</div>
      </div>
    `;
    this.canvas = root.querySelector(".surface") as HTMLCanvasElement;
    this.label = root.querySelector(".function-label") as HTMLElement;
    this.overlay = root.querySelector(".processing-overlay") as HTMLElement;
    this.banner = root.querySelector(".banner") as HTMLElement;
    this.notice = root.querySelector(".empty-notice") as HTMLElement;
    this.tickLayer = root.querySelector(".tick-layer") as HTMLElement;
    this.overlay.textContent = PROCESSING_TEXT;
    this.notice.textContent = EMPTY_MESH_TEXT;

    this.scene = (options.createScene ?? defaultCreateScene)(this.canvas);
    this.scheduleFrame =
      options.scheduleFrame ??
      ((callback) =>
        typeof requestAnimationFrame === "function"
          ? requestAnimationFrame(() => callback())
          : setTimeout(callback, 16));

    this.connection = new RelayConnection(
      url,
      "viewer",
      {
        onMessage: (msg) => this.handleMessage(msg),
        onBanner: (text) => this.setBanner(text),
      },
      { socketFactory: options.socketFactory, reconnectDelayMs: options.reconnectDelayMs },
    );

    this.detach = attachInput(this.canvas, {
      sendCommand: (command: Command) =>
        this.connection.send({ type: "view_command", command }),
      orbit: (dx, dy) => {
        this.camera = orbit(this.camera, -dx * 0.008, dy * 0.008);
        this.requestRender();
      },
      grab: (dx, dy) => {
        this.camera = grab(this.camera, dx, dy, 0.0015);
        this.requestRender();
      },
      dolly: (factor) => {
        this.camera = dolly(this.camera, factor);
        this.requestRender();
      },
    });
  }

  start(): void {
    this.connection.connect();
    this.requestRender();
  }

  stop(): void {
    this.detach();
    this.connection.close();
  }

  handleMessage(msg: ServerMessage): void {
    if (msg.type === "protocol_error") {
      this.setBanner(`server refused: ${msg.code}`);
      return;
    }
    this.state = applyServerMessage(this.state, msg);
    const mesh = this.state.mesh;
    if (mesh && mesh.revision !== this.prepared?.revision) {
      // fully prepare, then swap with one assignment: a frame never sees
      // a half-applied update
      const next = prepareMesh(mesh);
      const axes = buildAxisGeometry(mesh.axes);
      this.prepared = next;
      this.anchors = axes.anchors;
      this.scene?.setMesh(next);
      this.scene?.setAxisLines(axes.lines);
    } else if (!mesh) {
      this.prepared = null;
      this.anchors = [];
    }
    this.renderHud();
    this.requestRender();
  }

  /** The invariant the tests pin: geometry is exactly the wire payload. */
  renderedVertexCount(): number {
    return this.prepared ? this.prepared.vertexCount : 0;
  }

  renderedTriangleCount(): number {
    return this.prepared ? this.prepared.triangleCount : 0;
  }

  labelText(): string {
    return this.label.textContent ?? "";
  }

  overlayVisible(): boolean {
    return !this.overlay.classList.contains("hidden");
  }

  private setBanner(text: string | null): void {
    if (text === null) {
      this.banner.classList.add("hidden");
      this.banner.textContent = "";
    } else {
      this.banner.textContent = text;
      this.banner.classList.remove("hidden");
    }
  }

  renderHud(): void {
    this.label.textContent = this.prepared ? this.prepared.label : "";
    this.overlay.classList.toggle("hidden", this.state.status !== "processing");
    const empty = this.prepared !== null && this.prepared.triangleCount === 0;
    this.notice.classList.toggle("hidden", !empty);
    this.renderTickLabels();
  }

  private renderTickLabels(): void {
    const width = this.canvas.clientWidth;
    const height = this.canvas.clientHeight;
    this.tickLayer.textContent = "";
    if (!this.anchors.length || width <= 0 || height <= 0) return;
    const vp = viewProjection(this.camera, width / height);
    for (const anchor of this.anchors) {
      const ndc = project(vp, anchor.world);
      if (!ndc.visible) continue;
      const el = document.createElement("span");
      el.className = `tick tick-${anchor.axis}`;
      el.textContent = anchor.label;
      el.style.left = `${((ndc.x + 1) / 2) * width}px`;
      el.style.top = `${((1 - ndc.y) / 2) * height}px`;
      this.tickLayer.appendChild(el);
    }
  }

  private requestRender(): void {
    if (this.frameQueued) return;
    this.frameQueued = true;
    this.scheduleFrame(() => {
      this.frameQueued = false;
      this.drawFrame();
    });
  }

  private drawFrame(): void {
    const width = this.canvas.clientWidth || this.canvas.width;
    const height = this.canvas.clientHeight || this.canvas.height;
    if (this.canvas.width !== width || this.canvas.height !== height) {
      this.canvas.width = width;
      this.canvas.height = height;
    }
    this.scene?.render(this.camera, width, height);
    this.renderTickLabels();
  }
}
