/**
 * WebSocket client: hello on open, JSON frames in both directions,
 * automatic reconnect with a fresh handshake after a drop.
 */

import { ClientMessage, Role, ServerMessage, decodeServerFrame, hello } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionHandlers {
  onMessage(msg: ServerMessage): void;
  /** null hides the banner; a string shows it. */
  onBanner(text: string | null): void;
}

export interface ConnectionOptions {
  reconnectDelayMs?: number;
  socketFactory?: SocketFactory;
}

export class RelayConnection {
  readonly url: string;
  readonly role: Role;
  private handlers: ConnectionHandlers;
  private factory: SocketFactory;
  private reconnectDelayMs: number;
  private socket: SocketLike | null = null;
  private closed = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(url: string, role: Role, handlers: ConnectionHandlers, options: ConnectionOptions = {}) {
    this.url = url;
    this.role = role;
    this.handlers = handlers;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.factory =
      options.socketFactory ?? ((u: string) => new WebSocket(u) as unknown as SocketLike);
  }

  connect(): void {
    if (this.closed) return;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.handlers.onBanner(null);
      socket.send(JSON.stringify(hello(this.role)));
    };
    socket.onmessage = (event) => {
      let msg: ServerMessage;
      try {
        msg = decodeServerFrame(String(event.data));
      } catch {
        return; // ignore unparseable frames
      }
      this.handlers.onMessage(msg);
    };
    socket.onclose = () => {
      if (this.closed) return;
      this.handlers.onBanner("connection lost, retrying…");
      this.scheduleReconnect();
    };
    socket.onerror = () => {
      // onclose follows and handles the retry
    };
  }

  private scheduleReconnect(): void {
    if (this.timer !== null) return;
    this.timer = setTimeout(() => {
      this.timer = null;
      this.connect();
    }, this.reconnectDelayMs);
  }

  send(msg: ClientMessage): void {
    try {
      this.socket?.send(JSON.stringify(msg));
    } catch {
      // socket is down; the reconnect handshake will resync state
    }
  }

  close(): void {
    this.closed = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.socket?.close();
  }
}
