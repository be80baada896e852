import type { StateMessage } from "../src/protocol.js";

export function makeState(overrides: Partial<StateMessage> = {}): StateMessage {
  return {
    kind: "state",
    tick: 0,
    distance: 4,
    pleasure: -1,
    arousal: 1,
    dominance: 1,
    sd_target: 0.2,
    c_sd: 1,
    torso_pitch_command: -3.8,
    deviation: -3.8,
    lean: -0.5,
    forward_velocity: 1.98,
    blocked: false,
    phase: "confrontation",
    trainee_position: 4,
    ...overrides,
  };
}
