// Canvas renderer. Pure function of (context, size, state): draws the
// arena bounds, lights (disc radius proportional to power), vehicles as
// pose triangles with sensor rays, per-vehicle trails, and a selection
// ring. The snapshot itself is never mutated; the panel (DOM) handles
// the numeric read-outs.

import type { Size } from "./camera.js";
import { worldToScreen } from "./camera.js";
import type { Rect } from "./camera.js";
import type { UiState } from "./state.js";

export const ARENA: Rect = { xmin: -10, xmax: 10, ymin: -10, ymax: 10 };

const SENSOR_ANGLE = Math.PI / 6; // matches the simulator default (30 deg)
const SENSOR_RAY = 0.6; // world units, display only
const BODY = 0.22; // triangle half-length in world units

export function lightRadiusPx(power: number, scale: number): number {
  const worldRadius = 0.12 * power;
  return Math.min(40, Math.max(3, worldRadius * scale));
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  size: Size,
  state: UiState,
): void {
  ctx.fillStyle = "#10141a";
  ctx.fillRect(0, 0, size.width, size.height);
  const cam = state.camera;

  const a = worldToScreen(cam, size, { x: ARENA.xmin, y: ARENA.ymax });
  const b = worldToScreen(cam, size, { x: ARENA.xmax, y: ARENA.ymin });
  ctx.strokeStyle = "#2e3a48";
  ctx.lineWidth = 1.5;
  ctx.strokeRect(a.x, a.y, b.x - a.x, b.y - a.y);

  const snap = state.latest;
  if (!snap) return;

  for (const [id, trail] of state.trails) {
    if (trail.length < 2) continue;
    ctx.strokeStyle = state.selected?.kind === "vehicle" && state.selected.id === id
      ? "#67e8f9"
      : "#3b82f6";
    ctx.globalAlpha = 0.45;
    ctx.lineWidth = 1;
    ctx.beginPath();
    const first = trail[0]!;
    const p0 = worldToScreen(cam, size, first);
    ctx.moveTo(p0.x, p0.y);
    for (let i = 1; i < trail.length; i++) {
      const p = worldToScreen(cam, size, trail[i]!);
      ctx.lineTo(p.x, p.y);
    }
    ctx.stroke();
    ctx.globalAlpha = 1;
  }

  for (const light of snap.lights) {
    const c = worldToScreen(cam, size, light);
    const r = lightRadiusPx(light.power, cam.scale);
    const glow = ctx.createRadialGradient(c.x, c.y, 0, c.x, c.y, r * 3);
    glow.addColorStop(0, "rgba(253, 224, 71, 0.35)");
    glow.addColorStop(1, "rgba(253, 224, 71, 0)");
    ctx.fillStyle = glow;
    ctx.beginPath();
    ctx.arc(c.x, c.y, r * 3, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fde047";
    ctx.beginPath();
    ctx.arc(c.x, c.y, r, 0, 2 * Math.PI);
    ctx.fill();
    if (state.selected?.kind === "light" && state.selected.id === light.id) {
      ctx.strokeStyle = "#f8fafc";
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(c.x, c.y, r + 4, 0, 2 * Math.PI);
      ctx.stroke();
    }
  }

  for (const v of snap.vehicles) {
    const h = v.heading;
    const nose = worldToScreen(cam, size, {
      x: v.x + BODY * Math.cos(h),
      y: v.y + BODY * Math.sin(h),
    });
    const rear = 2.4; // rad offset of the two rear corners from heading
    const left = worldToScreen(cam, size, {
      x: v.x + BODY * Math.cos(h + rear),
      y: v.y + BODY * Math.sin(h + rear),
    });
    const right = worldToScreen(cam, size, {
      x: v.x + BODY * Math.cos(h - rear),
      y: v.y + BODY * Math.sin(h - rear),
    });
    const selected = state.selected?.kind === "vehicle" && state.selected.id === v.id;

    for (const side of [1, -1] as const) {
      const angle = h + side * SENSOR_ANGLE;
      const from = worldToScreen(cam, size, { x: v.x, y: v.y });
      const to = worldToScreen(cam, size, {
        x: v.x + SENSOR_RAY * Math.cos(angle),
        y: v.y + SENSOR_RAY * Math.sin(angle),
      });
      const mu = side === 1 ? v.muL : v.muR;
      ctx.strokeStyle = `rgba(250, 204, 21, ${0.15 + 0.85 * mu})`;
      ctx.lineWidth = 1;
      ctx.beginPath();
      ctx.moveTo(from.x, from.y);
      ctx.lineTo(to.x, to.y);
      ctx.stroke();
    }

    ctx.fillStyle = selected ? "#67e8f9" : "#60a5fa";
    ctx.beginPath();
    ctx.moveTo(nose.x, nose.y);
    ctx.lineTo(left.x, left.y);
    ctx.lineTo(right.x, right.y);
    ctx.closePath();
    ctx.fill();
    if (selected) {
      ctx.strokeStyle = "#f8fafc";
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
  }
}
