// Entry point: wires the session client, UI state, canvas renderer and
// controls together. The render loop reads the latest-snapshot slot on
// every animation frame, so a burst of frames never queues paints, and
// the page keeps rendering the last known world while reconnecting.

import { pan, screenToWorld, worldToScreen, zoomAt } from "./camera.js";
import type { Point, Size } from "./camera.js";
import { SessionClient } from "./net.js";
import { renderPanel } from "./panel.js";
import type { Archetype, Mode } from "./protocol.js";
import { drawScene, lightRadiusPx } from "./render.js";
import {
  applyServerMessage,
  createState,
  recordPending,
  setConnection,
} from "./state.js";

const RECONNECT_DELAY_MS = 1000;

function sessionUrl(): string {
  const override = new URLSearchParams(location.search).get("server");
  if (override) return override;
  const proto = location.protocol === "https:" ? "wss" : "ws";
  return `${proto}://${location.host}/session`;
}

function main(): void {
  const canvas = document.getElementById("scene") as HTMLCanvasElement;
  const panel = document.getElementById("panel") as HTMLElement;
  const maybeCtx = canvas.getContext("2d");
  if (!maybeCtx) throw new Error("2d canvas is unavailable");
  const ctx = maybeCtx;

  const state = createState();
  const client = new SessionClient(
    (handlers) => {
      const ws = new WebSocket(sessionUrl());
      ws.onopen = () => handlers.onOpen();
      ws.onmessage = (event) => handlers.onMessage(String(event.data));
      ws.onclose = () => handlers.onClose();
      return { send: (text) => ws.send(text), close: () => ws.close() };
    },
    {
      onMessage: (msg) => applyServerMessage(state, msg),
      onStatus: (status) => {
        setConnection(state, status);
        if (status === "closed") {
          setTimeout(() => client.connect(), RECONNECT_DELAY_MS);
        }
      },
      onSent: (seq, kind) => recordPending(state, seq, kind),
      onProtocolError: (error) => {
        state.lastError = `bad frame: ${error.message}`;
      },
    },
  );
  client.connect();

  function viewSize(): Size {
    return { width: canvas.width, height: canvas.height };
  }

  function resize(): void {
    canvas.width = canvas.clientWidth * devicePixelRatio;
    canvas.height = canvas.clientHeight * devicePixelRatio;
  }
  window.addEventListener("resize", resize);
  resize();

  function canvasPoint(event: MouseEvent): Point {
    const rect = canvas.getBoundingClientRect();
    return {
      x: (event.clientX - rect.left) * devicePixelRatio,
      y: (event.clientY - rect.top) * devicePixelRatio,
    };
  }

  type Drag =
    | { kind: "pan"; last: Point }
    | { kind: "light"; id: number }
    | null;
  let drag: Drag = null;
  let queuedMove: { id: number; x: number; y: number } | null = null;

  function hitTest(at: Point): { kind: "vehicle" | "light"; id: number } | null {
    const snap = state.latest;
    if (!snap) return null;
    const size = viewSize();
    for (const light of snap.lights) {
      const c = worldToScreen(state.camera, size, light);
      const r = Math.max(10, lightRadiusPx(light.power, state.camera.scale));
      if (Math.hypot(c.x - at.x, c.y - at.y) <= r) {
        return { kind: "light", id: light.id };
      }
    }
    for (const v of snap.vehicles) {
      const c = worldToScreen(state.camera, size, v);
      if (Math.hypot(c.x - at.x, c.y - at.y) <= 14) {
        return { kind: "vehicle", id: v.id };
      }
    }
    return null;
  }

  canvas.addEventListener("pointerdown", (event) => {
    canvas.setPointerCapture(event.pointerId);
    const at = canvasPoint(event);
    const hit = hitTest(at);
    state.selected = hit;
    drag = hit?.kind === "light" ? { kind: "light", id: hit.id } : { kind: "pan", last: at };
  });

  canvas.addEventListener("pointermove", (event) => {
    if (!drag) return;
    const at = canvasPoint(event);
    if (drag.kind === "pan") {
      state.camera = pan(state.camera, at.x - drag.last.x, at.y - drag.last.y);
      drag.last = at;
    } else {
      const w = screenToWorld(state.camera, viewSize(), at);
      queuedMove = { id: drag.id, x: w.x, y: w.y }; // coalesced per frame
    }
  });

  canvas.addEventListener("pointerup", () => {
    drag = null;
  });

  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = Math.exp(-event.deltaY * 0.0012);
    state.camera = zoomAt(state.camera, viewSize(), canvasPoint(event), factor);
  }, { passive: false });

  function button(id: string, onClick: () => void): void {
    document.getElementById(id)?.addEventListener("click", onClick);
  }
  button("btn-pause", () => client.command("pause"));
  button("btn-resume", () => client.command("resume"));
  button("btn-step", () => client.command("step_once"));
  button("btn-reset", () => client.command("reset"));
  button("btn-add-light", () =>
    client.command("add_light", { x: state.camera.cx, y: state.camera.cy, power: 1.0 }),
  );
  button("btn-remove-light", () => {
    if (state.selected?.kind === "light") {
      client.command("remove_light", { id: state.selected.id });
      state.selected = null;
    }
  });

  const archetypeSel = document.getElementById("sel-archetype") as HTMLSelectElement | null;
  archetypeSel?.addEventListener("change", () => {
    if (state.selected?.kind === "vehicle") {
      client.command("set_archetype", {
        id: state.selected.id,
        archetype: archetypeSel.value as Archetype,
      });
    }
  });
  const modeSel = document.getElementById("sel-mode") as HTMLSelectElement | null;
  modeSel?.addEventListener("change", () => {
    if (state.selected?.kind === "vehicle") {
      client.command("set_mode", { id: state.selected.id, mode: modeSel.value as Mode });
    }
  });
  button("btn-formula", () => {
    const left = (document.getElementById("formula-left") as HTMLInputElement).value;
    const right = (document.getElementById("formula-right") as HTMLInputElement).value;
    if (state.selected?.kind === "vehicle" && left && right) {
      client.command("set_formula", { id: state.selected.id, left, right });
    }
  });

  function frame(): void {
    if (queuedMove) {
      client.command("move_light", queuedMove);
      queuedMove = null;
    }
    drawScene(ctx, viewSize(), state);
    renderPanel(panel, state);
    requestAnimationFrame(frame);
  }
  requestAnimationFrame(frame);
}

main();
