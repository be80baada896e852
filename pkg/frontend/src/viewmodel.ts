/**
 * Pure mapping from the last received state message to everything the
 * renderer draws. No simulation happens here: every displayed value is
 * taken verbatim from the server state, so replaying a recorded stream
 * reproduces the identical frames.
 *
 * World layout: a 1-D corridor seen from above. The virtual character
 * stands at `trainee_position - distance`, the trainee at
 * `trainee_position`; the counter band marks the min-distance floor in
 * front of the character.
 */

import type { StateMessage } from "./protocol.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export interface ConsoleConfig {
  /** meters shown across the canvas */
  worldMin: number;
  worldMax: number;
  width: number;
  height: number;
  /** counter depth drawn in front of the VC (the engine's distance floor) */
  minDistance: number;
  /** px of arrow per unit of lean */
  leanScale: number;
}

export const DEFAULT_CONFIG: ConsoleConfig = {
  worldMin: -2,
  worldMax: 12,
  width: 900,
  height: 360,
  minDistance: 1,
  leanScale: 60,
};

export interface Point {
  x: number;
  y: number;
}

export interface ViewModel {
  status: ConnectionStatus;
  tick: number | null;
  phase: string;
  blocked: boolean;
  lastError: string | null;
  vc: Point | null;
  trainee: Point | null;
  /** arrow from the VC marker; length/direction encode lean (toward = approach) */
  leanArrow: { from: Point; to: Point } | null;
  sdRing: { center: Point; radius: number } | null;
  counterBand: { x0: number; x1: number } | null;
  /** raw PAD values in [-1, 1], drawn as three bars */
  gauges: { pleasure: number; arousal: number; dominance: number } | null;
  approachVelocity: number;
}

export function toCanvasX(meters: number, cfg: ConsoleConfig): number {
  return ((meters - cfg.worldMin) / (cfg.worldMax - cfg.worldMin)) * cfg.width;
}

export function metersToPx(meters: number, cfg: ConsoleConfig): number {
  return (meters / (cfg.worldMax - cfg.worldMin)) * cfg.width;
}

export function buildViewModel(
  state: StateMessage | null,
  status: ConnectionStatus,
  cfg: ConsoleConfig,
  lastError: string | null = null,
): ViewModel {
  if (state === null) {
    return {
      status,
      tick: null,
      phase: "",
      blocked: false,
      lastError,
      vc: null,
      trainee: null,
      leanArrow: null,
      sdRing: null,
      counterBand: null,
      gauges: null,
      approachVelocity: 0,
    };
  }
  const laneY = cfg.height * 0.55;
  const vcX = state.trainee_position - state.distance;
  const vc = { x: toCanvasX(vcX, cfg), y: laneY };
  const trainee = { x: toCanvasX(state.trainee_position, cfg), y: laneY };
  // negative lean points toward the trainee (to the right of the VC)
  const arrowLength = Math.abs(state.lean) * cfg.leanScale;
  const direction = state.lean < 0 ? 1 : state.lean > 0 ? -1 : 0;
  return {
    status,
    tick: state.tick,
    phase: state.phase,
    blocked: state.blocked,
    lastError,
    vc,
    trainee,
    leanArrow:
      direction === 0
        ? null
        : { from: vc, to: { x: vc.x + direction * arrowLength, y: laneY } },
    sdRing: { center: vc, radius: metersToPx(state.sd_target, cfg) },
    counterBand: {
      x0: toCanvasX(vcX, cfg),
      x1: toCanvasX(vcX + cfg.minDistance, cfg),
    },
    gauges: {
      pleasure: state.pleasure,
      arousal: state.arousal,
      dominance: state.dominance,
    },
    approachVelocity: state.forward_velocity,
  };
}
