/**
 * Wire protocol shared with the session service: newline-delimited JSON
 * objects discriminated by a `kind` field. State messages mirror the
 * engine's trace rows plus the trainee's absolute position.
 */

export interface StateMessage {
  kind: "state";
  tick: number;
  distance: number;
  pleasure: number;
  arousal: number;
  dominance: number;
  sd_target: number;
  c_sd: number;
  torso_pitch_command: number;
  deviation: number;
  lean: number;
  forward_velocity: number;
  blocked: boolean;
  phase: string;
  trainee_position: number;
}

export interface ErrorMessage {
  kind: "error";
  message: string;
}

export type ServerMessage = StateMessage | ErrorMessage;

export interface InputMessage {
  kind: "input";
  move: number;
  calmness: number;
}

export type ClientMessage =
  | InputMessage
  | { kind: "reset" }
  | { kind: "pause" }
  | { kind: "resume" };

const STATE_NUMBER_FIELDS = [
  "tick",
  "distance",
  "pleasure",
  "arousal",
  "dominance",
  "sd_target",
  "c_sd",
  "torso_pitch_command",
  "deviation",
  "lean",
  "forward_velocity",
  "trainee_position",
] as const;

export function parseServerMessage(line: string): ServerMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch {
    throw new Error(`bad JSON from server: ${line}`);
  }
  if (typeof raw !== "object" || raw === null || !("kind" in raw)) {
    throw new Error(`message without kind: ${line}`);
  }
  const msg = raw as Record<string, unknown>;
  if (msg.kind === "error") {
    return { kind: "error", message: String(msg.message ?? "") };
  }
  if (msg.kind !== "state") {
    throw new Error(`unknown message kind: ${String(msg.kind)}`);
  }
  for (const field of STATE_NUMBER_FIELDS) {
    if (typeof msg[field] !== "number") {
      throw new Error(`state message missing numeric field ${field}`);
    }
  }
  if (typeof msg.blocked !== "boolean" || typeof msg.phase !== "string") {
    throw new Error("state message missing blocked/phase");
  }
  return msg as unknown as StateMessage;
}

/** Reassembles newline-delimited messages from arbitrary stream chunks. */
export class NdjsonDecoder {
  private buffer = "";

  push(chunk: string): ServerMessage[] {
    this.buffer += chunk;
    const messages: ServerMessage[] = [];
    for (;;) {
      const newline = this.buffer.indexOf("\n");
      if (newline < 0) {
        return messages;
      }
      const line = this.buffer.slice(0, newline).trim();
      this.buffer = this.buffer.slice(newline + 1);
      if (line.length > 0) {
        messages.push(parseServerMessage(line));
      }
    }
  }
}

export function encodeClientMessage(msg: ClientMessage): string {
  return JSON.stringify(msg);
}
