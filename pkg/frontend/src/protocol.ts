// Wire types for the session endpoint. Every frame, both directions, is
// a JSON object {kind, seq, payload}. The client owns its seq counter
// (strictly increasing per connection); the server acknowledges every
// command with its seq.

export const CLIENT_KINDS = [
  "add_light",
  "move_light",
  "remove_light",
  "set_archetype",
  "set_mode",
  "set_formula",
  "pause",
  "resume",
  "step_once",
  "reset",
] as const;

export type ClientKind = (typeof CLIENT_KINDS)[number];

export type Archetype = "fear" | "aggress" | "love" | "explore";
export type Mode = "crisp" | "fuzzy" | "trivalued";

export interface VehicleSnapshot {
  id: number;
  x: number;
  y: number;
  heading: number;
  vL: number;
  vR: number;
  muL: number;
  muR: number;
  archetype: Archetype;
  mode: Mode;
  decision: string;
}

export interface LightSnapshot {
  id: number;
  x: number;
  y: number;
  power: number;
}

export interface SnapshotPayload {
  time: number;
  vehicles: VehicleSnapshot[];
  lights: LightSnapshot[];
}

export interface AckPayload {
  command_seq: number;
  command_kind: string;
}

export interface ErrorPayload {
  message: string;
  command_seq: number | null;
}

export type ServerMessage =
  | { kind: "snapshot"; seq: number; payload: SnapshotPayload }
  | { kind: "ack"; seq: number; payload: AckPayload }
  | { kind: "error"; seq: number; payload: ErrorPayload };

export interface ClientCommand {
  kind: ClientKind;
  seq: number;
  payload: Record<string, unknown>;
}

export function encodeCommand(cmd: ClientCommand): string {
  return JSON.stringify({ kind: cmd.kind, seq: cmd.seq, payload: cmd.payload });
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function asNumber(value: unknown, where: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new Error(`expected a number at ${where}`);
  }
  return value;
}

export function parseServerMessage(text: string): ServerMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new Error("frame is not JSON");
  }
  if (!isRecord(raw)) throw new Error("frame is not an object");
  const kind = raw["kind"];
  const seq = asNumber(raw["seq"], "seq");
  const payload = raw["payload"];
  if (!isRecord(payload)) throw new Error("payload is not an object");
  if (kind === "snapshot") {
    asNumber(payload["time"], "payload.time");
    if (!Array.isArray(payload["vehicles"]) || !Array.isArray(payload["lights"])) {
      throw new Error("snapshot payload missing vehicles/lights");
    }
    return { kind, seq, payload: payload as unknown as SnapshotPayload };
  }
  if (kind === "ack") {
    asNumber(payload["command_seq"], "payload.command_seq");
    return { kind, seq, payload: payload as unknown as AckPayload };
  }
  if (kind === "error") {
    if (typeof payload["message"] !== "string") {
      throw new Error("error payload missing message");
    }
    return { kind, seq, payload: payload as unknown as ErrorPayload };
  }
  throw new Error(`unknown server kind: ${String(kind)}`);
}
