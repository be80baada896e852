/**
 * View model to draw-command list, and the thin canvas applier.
 *
 * Keeping the op list pure makes frame generation testable and
 * deterministic: the same view model always yields the same ops.
 */

import type { Point, ViewModel } from "./viewmodel.js";

export type DrawOp =
  | { op: "clear"; color: string; width: number; height: number }
  | { op: "rect"; x: number; y: number; w: number; h: number; color: string }
  | { op: "circle"; x: number; y: number; r: number; color: string; fill: boolean }
  | { op: "line"; x1: number; y1: number; x2: number; y2: number; color: string; width: number }
  | { op: "text"; x: number; y: number; text: string; color: string; font: string };

const COLORS = {
  background: "#10141a",
  lane: "#2a3342",
  counter: "#4a3b24",
  vc: "#e2574c",
  vcBlocked: "#f0a050",
  trainee: "#4c9be2",
  ring: "#6a7f99",
  arrow: "#f2d34f",
  text: "#cdd6e4",
  gaugeFrame: "#3c4656",
  gaugeBar: ["#74c47b", "#e2b14c", "#c974d8"],
  error: "#ff6b6b",
} as const;

const GAUGE_NAMES = ["P", "A", "D"] as const;
const FONT = "13px monospace";

export function renderOps(vm: ViewModel, width: number, height: number): DrawOp[] {
  const ops: DrawOp[] = [
    { op: "clear", color: COLORS.background, width, height },
  ];
  const laneY = height * 0.55;
  ops.push({ op: "rect", x: 0, y: laneY - 3, w: width, h: 6, color: COLORS.lane });

  if (vm.counterBand) {
    ops.push({
      op: "rect",
      x: vm.counterBand.x0,
      y: laneY - 26,
      w: vm.counterBand.x1 - vm.counterBand.x0,
      h: 52,
      color: COLORS.counter,
    });
  }
  if (vm.sdRing) {
    ops.push({
      op: "circle",
      x: vm.sdRing.center.x,
      y: vm.sdRing.center.y,
      r: vm.sdRing.radius,
      color: COLORS.ring,
      fill: false,
    });
  }
  if (vm.vc) {
    ops.push({
      op: "circle",
      x: vm.vc.x,
      y: vm.vc.y,
      r: 10,
      color: vm.blocked ? COLORS.vcBlocked : COLORS.vc,
      fill: true,
    });
  }
  if (vm.leanArrow) {
    ops.push(...arrowOps(vm.leanArrow.from, vm.leanArrow.to));
  }
  if (vm.trainee) {
    ops.push({
      op: "circle",
      x: vm.trainee.x,
      y: vm.trainee.y,
      r: 8,
      color: COLORS.trainee,
      fill: true,
    });
  }
  if (vm.gauges) {
    const values = [vm.gauges.pleasure, vm.gauges.arousal, vm.gauges.dominance];
    values.forEach((value, i) => {
      ops.push(...gaugeOps(value, GAUGE_NAMES[i] ?? "?", i, COLORS.gaugeBar[i] ?? "#fff"));
    });
  }
  const statusLine =
    vm.status === "connected" && vm.tick !== null
      ? `tick ${vm.tick}  phase ${vm.phase}${vm.blocked ? "  [blocked]" : ""}`
      : vm.status;
  ops.push({ op: "text", x: 12, y: 22, text: statusLine, color: COLORS.text, font: FONT });
  if (vm.lastError) {
    ops.push({
      op: "text",
      x: 12,
      y: height - 12,
      text: vm.lastError,
      color: COLORS.error,
      font: FONT,
    });
  }
  return ops;
}

function arrowOps(from: Point, to: Point): DrawOp[] {
  const head = 6 * Math.sign(to.x - from.x);
  return [
    { op: "line", x1: from.x, y1: from.y, x2: to.x, y2: to.y, color: COLORS.arrow, width: 3 },
    { op: "line", x1: to.x, y1: to.y, x2: to.x - head, y2: to.y - 5, color: COLORS.arrow, width: 3 },
    { op: "line", x1: to.x, y1: to.y, x2: to.x - head, y2: to.y + 5, color: COLORS.arrow, width: 3 },
  ];
}

function gaugeOps(value: number, label: string, index: number, color: string): DrawOp[] {
  const x = 12 + index * 120;
  const y = 40;
  const w = 100;
  const h = 10;
  const clamped = Math.max(-1, Math.min(1, value));
  const half = w / 2;
  const barWidth = Math.abs(clamped) * half;
  const barX = clamped >= 0 ? x + half : x + half - barWidth;
  return [
    { op: "rect", x, y, w, h, color: COLORS.gaugeFrame },
    { op: "rect", x: barX, y, w: barWidth, h, color },
    { op: "line", x1: x + half, y1: y - 2, x2: x + half, y2: y + h + 2, color: COLORS.text, width: 1 },
    {
      op: "text",
      x,
      y: y + 26,
      text: `${label} ${clamped.toFixed(2)}`,
      color: COLORS.text,
      font: FONT,
    },
  ];
}

export function applyOps(ctx: CanvasRenderingContext2D, ops: DrawOp[]): void {
  for (const op of ops) {
    switch (op.op) {
      case "clear":
        ctx.fillStyle = op.color;
        ctx.fillRect(0, 0, op.width, op.height);
        break;
      case "rect":
        ctx.fillStyle = op.color;
        ctx.fillRect(op.x, op.y, op.w, op.h);
        break;
      case "circle":
        ctx.beginPath();
        ctx.arc(op.x, op.y, op.r, 0, Math.PI * 2);
        if (op.fill) {
          ctx.fillStyle = op.color;
          ctx.fill();
        } else {
          ctx.strokeStyle = op.color;
          ctx.lineWidth = 1;
          ctx.stroke();
        }
        break;
      case "line":
        ctx.beginPath();
        ctx.moveTo(op.x1, op.y1);
        ctx.lineTo(op.x2, op.y2);
        ctx.strokeStyle = op.color;
        ctx.lineWidth = op.width;
        ctx.stroke();
        break;
      case "text":
        ctx.fillStyle = op.color;
        ctx.font = op.font;
        ctx.fillText(op.text, op.x, op.y);
        break;
    }
  }
}
