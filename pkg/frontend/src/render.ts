// Canvas drawing for the cluster gauges and the bird's-eye map.

import { ClusterView } from "./cluster.js";
import { MAP_SCALE, worldToScreen } from "./centerstack.js";
import { UiStatePayload } from "./protocol.js";

const GAUGE_MAX_KMH = 180;

function drawGauge(ctx: CanvasRenderingContext2D, cx: number, cy: number, r: number,
                   frac: number, label: string, value: string, lit: boolean): void {
  const a0 = Math.PI * 0.75;
  const a1 = Math.PI * 2.25;
  ctx.lineWidth = 10;
  ctx.strokeStyle = "#223";
  ctx.beginPath();
  ctx.arc(cx, cy, r, a0, a1);
  ctx.stroke();
  ctx.strokeStyle = lit ? "#7df" : "#3af";
  ctx.beginPath();
  ctx.arc(cx, cy, r, a0, a0 + (a1 - a0) * Math.max(0, Math.min(1, frac)));
  ctx.stroke();
  ctx.fillStyle = "#eef";
  ctx.textAlign = "center";
  ctx.font = `${Math.round(r * 0.42)}px system-ui`;
  ctx.fillText(value, cx, cy + r * 0.1);
  ctx.font = `${Math.round(r * 0.16)}px system-ui`;
  ctx.fillStyle = "#89a";
  ctx.fillText(label, cx, cy + r * 0.45);
}

function drawBar(ctx: CanvasRenderingContext2D, x: number, y: number, w: number,
                 h: number, frac: number, color: string): void {
  ctx.fillStyle = "#223";
  ctx.fillRect(x, y, w, h);
  ctx.fillStyle = color;
  ctx.fillRect(x, y + h * (1 - frac), w, h * frac);
}

export function renderCluster(canvas: HTMLCanvasElement, view: ClusterView,
                              stale: boolean): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);

  if (view.sweepActive) {
    // self-test: every element fully lit
    drawGauge(ctx, w * 0.38, h * 0.55, h * 0.36, 1, "km/h", String(GAUGE_MAX_KMH), true);
    drawBar(ctx, w * 0.66, h * 0.25, 18, h * 0.55, 1, "#4d6");
    drawBar(ctx, w * 0.72, h * 0.25, 18, h * 0.55, 1, "#d55");
    ctx.fillStyle = "#7df";
    ctx.font = `${Math.round(h * 0.12)}px system-ui`;
    ctx.textAlign = "center";
    ctx.fillText("P R N D", w * 0.86, h * 0.55);
    return;
  }
  if (!view.hasData || stale) {
    ctx.fillStyle = "#556";
    ctx.font = `${Math.round(h * 0.1)}px system-ui`;
    ctx.textAlign = "center";
    ctx.fillText(stale && view.hasData ? "SIGNAL LOST" : "WAITING FOR DATA",
                 w / 2, h / 2);
    return;
  }

  drawGauge(ctx, w * 0.38, h * 0.55, h * 0.36, view.speedKmh / GAUGE_MAX_KMH,
            "km/h", view.speedText, false);
  drawBar(ctx, w * 0.66, h * 0.25, 18, h * 0.55, view.throttle, "#4d6");
  drawBar(ctx, w * 0.72, h * 0.25, 18, h * 0.55, view.brake, "#d55");
  ctx.fillStyle = "#eef";
  ctx.font = `${Math.round(h * 0.14)}px system-ui`;
  ctx.textAlign = "center";
  ctx.fillText(view.gear.toUpperCase()[0] ?? "-", w * 0.86, h * 0.5);
  // steering indicator
  ctx.strokeStyle = "#89a";
  ctx.beginPath();
  ctx.moveTo(w * 0.8, h * 0.75);
  ctx.lineTo(w * 0.92, h * 0.75);
  ctx.stroke();
  ctx.fillStyle = "#7df";
  ctx.beginPath();
  ctx.arc(w * 0.86 + view.steering * w * 0.055, h * 0.75, 5, 0, Math.PI * 2);
  ctx.fill();
}

export function renderMap(canvas: HTMLCanvasElement, ui: UiStatePayload | null,
                          stale: boolean): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width: w, height: h } = canvas;
  ctx.fillStyle = "#0c1018";
  ctx.fillRect(0, 0, w, h);
  if (!ui || stale) return;

  const anchor = { x: w / 2, y: h * 0.62 };
  const ego = ui.ego;

  // faint range rings every 10 m
  ctx.strokeStyle = "#1a2332";
  for (let r = 10; r <= 50; r += 10) {
    ctx.beginPath();
    ctx.arc(anchor.x, anchor.y, r * MAP_SCALE, 0, Math.PI * 2);
    ctx.stroke();
  }

  // other actors as dots, detected ones as contours exactly as received
  ctx.fillStyle = "#3d4a63";
  for (const a of ui.actors) {
    if (!a.active) continue;
    const p = worldToScreen(a.x, a.y, ego, anchor);
    ctx.beginPath();
    ctx.arc(p.x, p.y, 3, 0, Math.PI * 2);
    ctx.fill();
  }
  ctx.strokeStyle = "#6fe3a0";
  ctx.lineWidth = 1.5;
  for (const det of ui.detected) {
    ctx.beginPath();
    det.contour.forEach(([x, y], i) => {
      const p = worldToScreen(x, y, ego, anchor);
      if (i === 0) ctx.moveTo(p.x, p.y);
      else ctx.lineTo(p.x, p.y);
    });
    ctx.closePath();
    ctx.stroke();
  }

  // ego marker, pinned at the anchor, pointing up
  ctx.fillStyle = "#7df";
  ctx.beginPath();
  ctx.moveTo(anchor.x, anchor.y - 10);
  ctx.lineTo(anchor.x - 6, anchor.y + 8);
  ctx.lineTo(anchor.x + 6, anchor.y + 8);
  ctx.closePath();
  ctx.fill();
}
