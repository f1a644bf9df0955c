// Instrument cluster view model: shows exactly what the latest ui_state said,
// in display units. On every fresh connection all elements light up for the
// startup sweep, once, like a real dashboard self-test.

import { UiStatePayload } from "./protocol.js";

export const SWEEP_DURATION = 1.5; // s

export interface ClusterView {
  hasData: boolean;
  speedKmh: number;
  speedText: string;
  gear: string;
  steering: number; // [-1, 1]
  throttle: number; // [0, 1]
  brake: number; // [0, 1]
  sweepActive: boolean;
  sweepProgress: number; // 0..1 while active
}

export class ClusterViewModel {
  sweepCount = 0;
  private sweepStartedAt: number | null = null;
  private last: UiStatePayload | null = null;

  /** Call once per (re)connection; repeated calls during a run are ignored. */
  startSweep(now: number): void {
    if (this.sweepStartedAt !== null && now - this.sweepStartedAt <= SWEEP_DURATION) {
      return; // already sweeping
    }
    this.sweepStartedAt = now;
    this.sweepCount += 1;
  }

  update(ui: UiStatePayload): void {
    this.last = ui;
  }

  view(now: number): ClusterView {
    const sweepActive =
      this.sweepStartedAt !== null && now - this.sweepStartedAt <= SWEEP_DURATION;
    const speedKmh = this.last ? this.last.speed * 3.6 : 0;
    return {
      hasData: this.last !== null,
      speedKmh,
      speedText: String(Math.round(speedKmh)),
      gear: this.last ? this.last.gear : "-",
      steering: this.last ? this.last.steering_norm : 0,
      throttle: this.last ? this.last.throttle : 0,
      brake: this.last ? this.last.brake : 0,
      sweepActive,
      sweepProgress: sweepActive
        ? (now - (this.sweepStartedAt as number)) / SWEEP_DURATION
        : 0,
    };
  }
}
