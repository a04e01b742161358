// World <-> screen transform. World y points up, screen y points down;
// `scale` is pixels per world unit and the camera centre (cx, cy) maps
// to the middle of the viewport.

export interface Camera {
  cx: number;
  cy: number;
  scale: number;
}

export interface Size {
  width: number;
  height: number;
}

export interface Point {
  x: number;
  y: number;
}

export const MIN_SCALE = 2;
export const MAX_SCALE = 2000;

export function defaultCamera(): Camera {
  return { cx: 0, cy: 0, scale: 30 };
}

export function worldToScreen(cam: Camera, size: Size, w: Point): Point {
  return {
    x: size.width / 2 + (w.x - cam.cx) * cam.scale,
    y: size.height / 2 - (w.y - cam.cy) * cam.scale,
  };
}

export function screenToWorld(cam: Camera, size: Size, s: Point): Point {
  return {
    x: cam.cx + (s.x - size.width / 2) / cam.scale,
    y: cam.cy - (s.y - size.height / 2) / cam.scale,
  };
}

// Pan by a screen-space delta (drag gesture).
export function pan(cam: Camera, dxPx: number, dyPx: number): Camera {
  return { ...cam, cx: cam.cx - dxPx / cam.scale, cy: cam.cy + dyPx / cam.scale };
}

// Zoom by `factor` keeping the world point under the cursor fixed.
export function zoomAt(cam: Camera, size: Size, cursor: Point, factor: number): Camera {
  const scale = Math.min(MAX_SCALE, Math.max(MIN_SCALE, cam.scale * factor));
  if (scale === cam.scale) return cam;
  const anchor = screenToWorld(cam, size, cursor);
  // Solve for the centre that puts `anchor` back under `cursor`.
  return {
    scale,
    cx: anchor.x - (cursor.x - size.width / 2) / scale,
    cy: anchor.y + (cursor.y - size.height / 2) / scale,
  };
}

export interface Rect {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export function fitBounds(rect: Rect, size: Size, marginPx = 24): Camera {
  const w = Math.max(rect.xmax - rect.xmin, 1e-9);
  const h = Math.max(rect.ymax - rect.ymin, 1e-9);
  const scale = Math.min(
    (size.width - 2 * marginPx) / w,
    (size.height - 2 * marginPx) / h,
  );
  return {
    cx: (rect.xmin + rect.xmax) / 2,
    cy: (rect.ymin + rect.ymax) / 2,
    scale: Math.min(MAX_SCALE, Math.max(MIN_SCALE, scale)),
  };
}
