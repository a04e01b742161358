// UI state: connection status, the latest-snapshot slot (render reads
// this; the network fills it, so slow frames never queue up), pending
// commands awaiting acks, the current selection, camera and trails.
// There is no client-side simulation: everything drawn comes from the
// last snapshot the server sent.

import type { Camera } from "./camera.js";
import { defaultCamera } from "./camera.js";
import type { ClientKind, ServerMessage, SnapshotPayload } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface PendingCommand {
  seq: number;
  kind: ClientKind;
}

export interface Selection {
  kind: "vehicle" | "light";
  id: number;
}

export interface TrailPoint {
  x: number;
  y: number;
}

export const TRAIL_LIMIT = 500;

export interface UiState {
  connection: ConnectionStatus;
  latest: SnapshotPayload | null;
  latestSeq: number;
  pending: Map<number, PendingCommand>;
  selected: Selection | null;
  camera: Camera;
  trails: Map<number, TrailPoint[]>;
  lastError: string | null;
}

export function createState(): UiState {
  return {
    connection: "connecting",
    latest: null,
    latestSeq: -1,
    pending: new Map(),
    selected: null,
    camera: defaultCamera(),
    trails: new Map(),
    lastError: null,
  };
}

export function recordPending(state: UiState, seq: number, kind: ClientKind): void {
  state.pending.set(seq, { seq, kind });
}

export function setConnection(state: UiState, status: ConnectionStatus): void {
  state.connection = status;
}

function pushTrail(state: UiState, id: number, x: number, y: number): void {
  let trail = state.trails.get(id);
  if (!trail) {
    trail = [];
    state.trails.set(id, trail);
  }
  trail.push({ x, y });
  if (trail.length > TRAIL_LIMIT) {
    trail.splice(0, trail.length - TRAIL_LIMIT);
  }
}

export function applyServerMessage(state: UiState, msg: ServerMessage): void {
  if (msg.kind === "snapshot") {
    if (msg.seq <= state.latestSeq) return; // stale or duplicate frame
    if (state.latest && msg.payload.time < state.latest.time) {
      state.trails.clear(); // the session was reset; old trails are stale
    }
    state.latestSeq = msg.seq;
    state.latest = msg.payload;
    const alive = new Set<number>();
    for (const v of msg.payload.vehicles) {
      alive.add(v.id);
      pushTrail(state, v.id, v.x, v.y);
    }
    for (const id of [...state.trails.keys()]) {
      if (!alive.has(id)) state.trails.delete(id);
    }
    return;
  }
  if (msg.kind === "ack") {
    state.pending.delete(msg.payload.command_seq);
    return;
  }
  state.lastError = msg.payload.message;
  if (msg.payload.command_seq !== null && msg.payload.command_seq !== undefined) {
    state.pending.delete(msg.payload.command_seq);
  }
}

export function clearTrails(state: UiState): void {
  state.trails.clear();
}
