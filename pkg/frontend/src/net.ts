// Session client. Owns the strictly increasing command sequence, queues
// commands while disconnected and flushes them in order on (re)connect,
// and hands parsed server frames to the caller. The socket is injected
// so tests can drive the client without a browser or a server.

import type { ClientKind, ServerMessage } from "./protocol.js";
import { encodeCommand, parseServerMessage } from "./protocol.js";

export interface SocketLike {
  send(text: string): void;
  close(): void;
}

export interface SocketHandlers {
  onOpen(): void;
  onMessage(text: string): void;
  onClose(): void;
}

export type SocketFactory = (handlers: SocketHandlers) => SocketLike;

export interface ClientHandlers {
  onMessage(msg: ServerMessage): void;
  onStatus(status: "connecting" | "open" | "closed"): void;
  onSent(seq: number, kind: ClientKind): void;
  onProtocolError?(error: Error): void;
}

interface QueuedCommand {
  kind: ClientKind;
  seq: number;
  payload: Record<string, unknown>;
}

export class SessionClient {
  private nextSeq = 0;
  private socket: SocketLike | null = null;
  private open = false;
  private queue: QueuedCommand[] = [];

  constructor(
    private readonly factory: SocketFactory,
    private readonly handlers: ClientHandlers,
  ) {}

  get isOpen(): boolean {
    return this.open;
  }

  get queuedCount(): number {
    return this.queue.length;
  }

  connect(): void {
    this.handlers.onStatus("connecting");
    this.socket = this.factory({
      onOpen: () => {
        this.open = true;
        this.handlers.onStatus("open");
        this.flush();
      },
      onMessage: (text) => {
        let msg: ServerMessage;
        try {
          msg = parseServerMessage(text);
        } catch (error) {
          this.handlers.onProtocolError?.(error as Error);
          return;
        }
        this.handlers.onMessage(msg);
      },
      onClose: () => {
        this.open = false;
        this.socket = null;
        this.handlers.onStatus("closed");
      },
    });
  }

  disconnect(): void {
    this.socket?.close();
    this.socket = null;
    this.open = false;
  }

  // Sends now when connected, otherwise queues; either way the command
  // gets the next sequence number, so flushed backlogs stay ordered.
  command(kind: ClientKind, payload: Record<string, unknown> = {}): number {
    const seq = this.nextSeq++;
    const cmd: QueuedCommand = { kind, seq, payload };
    this.handlers.onSent(seq, kind);
    if (this.open && this.socket) {
      this.socket.send(encodeCommand(cmd));
    } else {
      this.queue.push(cmd);
    }
    return seq;
  }

  private flush(): void {
    if (!this.socket) return;
    const backlog = this.queue;
    this.queue = [];
    for (const cmd of backlog) {
      this.socket.send(encodeCommand(cmd));
    }
  }
}
