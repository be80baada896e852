/**
 * Console entry point: wires the WebSocket client, controls and renderer
 * to the page. The render loop draws exactly the last received state.
 */

import { SessionClient } from "./client.js";
import { ControlState, InputThrottle } from "./controls.js";
import type { ServerMessage, StateMessage } from "./protocol.js";
import { applyOps, renderOps } from "./render.js";
import {
  ConnectionStatus,
  DEFAULT_CONFIG,
  buildViewModel,
} from "./viewmodel.js";

const TICK_MS = 100;

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function main(): void {
  const canvas = element<HTMLCanvasElement>("arena");
  const slider = element<HTMLInputElement>("calmness");
  const calmnessLabel = element<HTMLSpanElement>("calmness-value");
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    throw new Error("canvas 2d context unavailable");
  }
  const cfg = { ...DEFAULT_CONFIG, width: canvas.width, height: canvas.height };

  let lastState: StateMessage | null = null;
  let status: ConnectionStatus = "connecting";
  let lastError: string | null = null;

  const params = new URLSearchParams(window.location.search);
  const url = params.get("ws") ?? "ws://127.0.0.1:7878";
  const client = new SessionClient(
    url,
    {
      onMessage(msg: ServerMessage) {
        if (msg.kind === "state") {
          lastState = msg;
        } else {
          lastError = msg.message;
        }
      },
      onStatus(next: ConnectionStatus) {
        status = next;
        if (next !== "connected") {
          lastState = lastState; // keep the last frame, only the banner changes
        }
      },
    },
    TICK_MS,
  );
  client.connect();

  const controls: ControlState = { forward: false, back: false, calmness: 1.0 };
  const throttle = new InputThrottle(TICK_MS);

  const keymap: Record<string, "forward" | "back"> = {
    ArrowLeft: "forward",
    ArrowRight: "back",
    a: "forward",
    d: "back",
  };
  window.addEventListener("keydown", (event) => {
    const direction = keymap[event.key];
    if (direction) {
      controls[direction] = true;
      event.preventDefault();
    }
  });
  window.addEventListener("keyup", (event) => {
    const direction = keymap[event.key];
    if (direction) {
      controls[direction] = false;
    }
  });
  slider.addEventListener("input", () => {
    controls.calmness = Number(slider.value) / 100;
    calmnessLabel.textContent = controls.calmness.toFixed(2);
  });
  element<HTMLButtonElement>("reset").addEventListener("click", () => {
    client.send({ kind: "reset" });
    throttle.reset();
  });
  element<HTMLButtonElement>("pause").addEventListener("click", () => {
    client.send({ kind: "pause" });
  });
  element<HTMLButtonElement>("resume").addEventListener("click", () => {
    client.send({ kind: "resume" });
  });

  function frame(nowMs: number): void {
    const input = throttle.sample(controls, nowMs);
    if (input) {
      client.send(input);
    }
    const vm = buildViewModel(lastState, status, cfg, lastError);
    applyOps(ctx!, renderOps(vm, cfg.width, cfg.height));
    requestAnimationFrame(frame);
  }
  requestAnimationFrame(frame);
}

main();
