/**
 * Keyboard/slider state to input messages, rate-limited to at most one
 * message per tick period so the service's latest-wins mailbox is never
 * flooded. Idle controls (no movement, calmness unchanged since the last
 * send) produce nothing: calmness persists server-side.
 */

import type { InputMessage } from "./protocol.js";

export interface ControlState {
  /** trainee steps toward the character */
  forward: boolean;
  /** trainee backs away */
  back: boolean;
  /** calmness slider in [0, 1] */
  calmness: number;
}

export class InputThrottle {
  private lastSentAt = -Infinity;
  private lastCalmness: number | null = null;

  constructor(
    private readonly tickMs: number,
    private readonly stepMeters = 0.25,
  ) {}

  /** Sample the controls; returns a message or null if nothing is due. */
  sample(controls: ControlState, nowMs: number): InputMessage | null {
    if (nowMs - this.lastSentAt < this.tickMs) {
      return null;
    }
    const move =
      (controls.back ? this.stepMeters : 0) - (controls.forward ? this.stepMeters : 0);
    const calmnessChanged = controls.calmness !== this.lastCalmness;
    if (move === 0 && !calmnessChanged) {
      return null;
    }
    this.lastSentAt = nowMs;
    this.lastCalmness = controls.calmness;
    return { kind: "input", move, calmness: controls.calmness };
  }

  reset(): void {
    this.lastSentAt = -Infinity;
    this.lastCalmness = null;
  }
}
