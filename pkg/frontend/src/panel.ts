// Side panel: connection badge, sim clock, and per-vehicle telemetry
// (bars for muL/muR/vL/vR plus the motion decision). Bars show the raw
// snapshot values; wheel speeds are normalized by the largest speed in
// view so the bars stay meaningful whatever v_max the config used.

import type { UiState } from "./state.js";
import type { VehicleSnapshot } from "./protocol.js";

function bar(label: string, value: number, display: string): string {
  const pct = Math.min(100, Math.max(0, value * 100));
  return (
    `<div class="bar-row"><span class="bar-label">${label}</span>` +
    `<span class="bar-track"><span class="bar-fill" style="width:${pct.toFixed(1)}%"></span></span>` +
    `<span class="bar-value">${display}</span></div>`
  );
}

function vehicleBlock(v: VehicleSnapshot, speedScale: number): string {
  return (
    `<div class="vehicle-block" data-vehicle="${v.id}">` +
    `<div class="vehicle-title">vehicle ${v.id} &middot; ${v.archetype} &middot; ${v.mode}</div>` +
    bar("muL", v.muL, v.muL.toFixed(3)) +
    bar("muR", v.muR, v.muR.toFixed(3)) +
    bar("vL", v.vL / speedScale, v.vL.toFixed(3)) +
    bar("vR", v.vR / speedScale, v.vR.toFixed(3)) +
    `<div class="decision">decision: <b>${v.decision}</b></div>` +
    `</div>`
  );
}

export function renderPanel(root: HTMLElement, state: UiState): void {
  const snap = state.latest;
  const status = `<div class="status status-${state.connection}">${state.connection}</div>`;
  const clock = snap ? `<div class="clock">t = ${snap.time.toFixed(2)} s</div>` : "";
  const error = state.lastError
    ? `<div class="error">${state.lastError}</div>`
    : "";
  let body = "";
  if (snap) {
    const speedScale = Math.max(1e-9, ...snap.vehicles.map((v) => Math.max(v.vL, v.vR)), 1);
    const vehicles = state.selected?.kind === "vehicle"
      ? snap.vehicles.filter((v) => v.id === state.selected?.id)
      : snap.vehicles;
    body = vehicles.map((v) => vehicleBlock(v, speedScale)).join("");
    if (state.selected?.kind === "light") {
      const light = snap.lights.find((l) => l.id === state.selected?.id);
      if (light) {
        body += `<div class="light-block">light ${light.id}: (${light.x.toFixed(2)}, ${light.y.toFixed(2)}) power ${light.power.toFixed(2)}</div>`;
      }
    }
  }
  root.innerHTML = status + clock + error + body;
}
