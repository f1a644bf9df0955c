// Touch routing: every registered element produces exactly one touch_event
// with screen-normalized coordinates; the explain button additionally fires
// request_explanation so the agent can honor on-demand policies.

import { CockpitConnection } from "./connection.js";

export const EXPLAIN_TARGET = "explain_button";

function clamp01(v: number): number {
  return Math.max(0, Math.min(1, v));
}

export class TouchDispatcher {
  constructor(private conn: CockpitConnection) {}

  tap(targetId: string, xNorm: number, yNorm: number,
      extra: Record<string, unknown> = {}): void {
    this.conn.send("touch_event", {
      target_id: targetId,
      x_norm: clamp01(xNorm),
      y_norm: clamp01(yNorm),
      action: "tap",
      ...extra,
    });
    if (targetId === EXPLAIN_TARGET) {
      this.conn.send("request_explanation", {});
    }
  }

  setVolume(value: number, xNorm = 0.5, yNorm = 0.9): void {
    this.conn.send("touch_event", {
      target_id: "volume_slider",
      x_norm: clamp01(xNorm),
      y_norm: clamp01(yNorm),
      action: "tap",
      value: clamp01(value),
    });
  }

  toggleMusic(xNorm = 0.5, yNorm = 0.85): void {
    this.tap("music_play_pause", xNorm, yNorm);
  }
}
