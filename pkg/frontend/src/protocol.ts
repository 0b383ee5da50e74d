/**
 * Wire protocol types and the client-side fold.
 *
 * Mirrors the server's JSON frames (see ../schema/protocol.schema.json).
 * The fold turns a stream of broadcasts into the same state a late
 * joiner receives in its snapshot; the mathematical state always comes
 * from the server, never from local computation.
 */

export const PROTOCOL_VERSION = 1;

export type Role = "wizard" | "viewer";
export type Status = "idle" | "processing";

export interface Tick {
  value: number;
  label: string;
}

export interface Axis {
  min: number;
  max: number;
  ticks: Tick[];
}

export interface Axes {
  x: Axis;
  y: Axis;
  z: Axis;
}

export interface MeshUpdate {
  type: "mesh_update";
  revision: number;
  positions: number[];
  normals: number[];
  colors: number[];
  indices: number[];
  axes: Axes;
  label: string;
}

export interface ParseErrorInfo {
  position: number;
  reason: string;
}

export interface EquationUpdate {
  type: "equation_update";
  source: string;
  canonical: string | null;
  error: ParseErrorInfo | null;
}

export interface StatusUpdate {
  type: "status_update";
  status: Status;
}

export interface Welcome {
  type: "welcome";
  session_id: string;
  protocol_version: number;
}

export interface EquationRef {
  source: string;
  canonical: string;
}

export interface GraphStateInfo {
  domain: { x_min: number; x_max: number; y_min: number; y_max: number };
  z_limits: { z_min: number; z_max: number };
  segments: number;
}

export interface Snapshot {
  type: "snapshot";
  equation: EquationRef | null;
  status: Status;
  graph_state: GraphStateInfo;
  mesh: MeshUpdate | null;
}

export interface ProtocolError {
  type: "protocol_error";
  code: string;
  message: string;
}

export type ServerMessage =
  | Welcome
  | EquationUpdate
  | StatusUpdate
  | MeshUpdate
  | Snapshot
  | ProtocolError;

export type PanCommand = { action: "pan"; dx_steps: number; dy_steps: number };
export type ZoomCommand = {
  action: "zoom";
  direction: "in" | "out";
  target: "input_domain" | "z_axis";
};
export type ResetCommand = { action: "reset" };
export type Command = PanCommand | ZoomCommand | ResetCommand;

export type ClientMessage =
  | { type: "hello"; role: Role; protocol_version: number }
  | { type: "set_equation"; source: string }
  | { type: "set_status"; status: Status }
  | { type: "view_command"; command: Command };

const SERVER_TYPES = new Set([
  "welcome",
  "equation_update",
  "status_update",
  "mesh_update",
  "snapshot",
  "protocol_error",
]);

export function decodeServerFrame(text: string): ServerMessage {
  let payload: unknown;
  try {
    payload = JSON.parse(text);
  } catch {
    throw new Error("frame is not valid JSON");
  }
  if (
    typeof payload !== "object" ||
    payload === null ||
    !SERVER_TYPES.has((payload as { type?: unknown }).type as string)
  ) {
    throw new Error("unknown server frame");
  }
  return payload as ServerMessage;
}

/** What a viewer accumulates from the broadcast stream. */
export interface FoldState {
  equation: EquationRef | null;
  status: Status;
  mesh: MeshUpdate | null;
  lastError: ParseErrorInfo | null;
  graphState: GraphStateInfo | null;
}

export function emptyFold(): FoldState {
  return { equation: null, status: "idle", mesh: null, lastError: null, graphState: null };
}

/**
 * Apply one server message. A failed equation_update records the error
 * but leaves the current equation and surface untouched; a snapshot
 * replaces everything (late join or reconnect).
 */
export function applyServerMessage(state: FoldState, msg: ServerMessage): FoldState {
  switch (msg.type) {
    case "equation_update":
      if (msg.error === null) {
        return {
          ...state,
          equation: { source: msg.source, canonical: msg.canonical as string },
          lastError: null,
        };
      }
      return { ...state, lastError: msg.error };
    case "status_update":
      return { ...state, status: msg.status };
    case "mesh_update":
      return { ...state, mesh: msg };
    case "snapshot":
      return {
        equation: msg.equation,
        status: msg.status,
        mesh: msg.mesh,
        lastError: null,
        graphState: msg.graph_state,
      };
    default:
      return state;
  }
}

export function hello(role: Role): ClientMessage {
  return { type: "hello", role, protocol_version: PROTOCOL_VERSION };
}
