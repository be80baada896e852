/**
 * WebSocket binding to the session gateway. Reconnects with a fixed
 * backoff; flags the session disconnected if no state arrives for two
 * tick periods; drops outgoing messages while the link is down.
 */

import {
  ClientMessage,
  NdjsonDecoder,
  ServerMessage,
  encodeClientMessage,
} from "./protocol.js";
import type { ConnectionStatus } from "./viewmodel.js";

export interface ClientHandlers {
  onMessage(msg: ServerMessage): void;
  onStatus(status: ConnectionStatus): void;
}

export class SessionClient {
  private socket: WebSocket | null = null;
  private decoder = new NdjsonDecoder();
  private staleTimer: ReturnType<typeof setTimeout> | null = null;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly handlers: ClientHandlers,
    private readonly tickMs = 100,
    private readonly reconnectMs = 1000,
  ) {}

  connect(): void {
    this.closed = false;
    this.handlers.onStatus("connecting");
    this.decoder = new NdjsonDecoder();
    const socket = new WebSocket(this.url);
    this.socket = socket;
    socket.onopen = () => this.handlers.onStatus("connected");
    socket.onmessage = (event) => {
      this.refreshStaleness();
      let messages: ServerMessage[];
      try {
        messages = this.decoder.push(String(event.data) + "\n");
      } catch (error) {
        this.handlers.onMessage({ kind: "error", message: String(error) });
        return;
      }
      this.handlers.onStatus("connected");
      for (const msg of messages) {
        this.handlers.onMessage(msg);
      }
    };
    socket.onclose = () => {
      this.handlers.onStatus("disconnected");
      this.socket = null;
      if (!this.closed) {
        setTimeout(() => this.connect(), this.reconnectMs);
      }
    };
    socket.onerror = () => {
      socket.close();
    };
  }

  private refreshStaleness(): void {
    if (this.staleTimer !== null) {
      clearTimeout(this.staleTimer);
    }
    this.staleTimer = setTimeout(() => {
      this.handlers.onStatus("disconnected");
    }, 2 * this.tickMs);
  }

  send(msg: ClientMessage): boolean {
    if (this.socket === null || this.socket.readyState !== WebSocket.OPEN) {
      return false; // dropped; the UI shows the disconnected status
    }
    this.socket.send(encodeClientMessage(msg));
    return true;
  }

  close(): void {
    this.closed = true;
    if (this.staleTimer !== null) {
      clearTimeout(this.staleTimer);
    }
    this.socket?.close();
  }
}
