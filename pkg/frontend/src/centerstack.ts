// Center-stack touchscreen state: ego-anchored bird's-eye map, detected
// contours exactly as received, music stub, and the explanation panel.

import { ExplanationPayload, UiStatePayload } from "./protocol.js";

export const MAP_SCALE = 6; // px per meter
export const EXPLANATION_TTL = 8.0; // s on screen

export interface ExplanationView {
  agentName: string;
  text: string;
  visible: boolean;
}

export interface CenterStackView {
  welcomeVisible: boolean;
  explainEnabled: boolean;
  music: { track: string; playing: boolean; volume: number };
  explanation: ExplanationView | null;
  ui: UiStatePayload | null;
}

export class CenterStackViewModel {
  private last: UiStatePayload | null = null;
  private shownExplanation: { p: ExplanationPayload; at: number } | null = null;

  update(ui: UiStatePayload): void {
    this.last = ui;
  }

  /** A new explanation replaces whatever is on the panel. */
  showExplanation(p: ExplanationPayload, now: number): void {
    this.shownExplanation = { p, at: now };
  }

  view(now: number, connected: boolean): CenterStackView {
    let explanation: ExplanationView | null = null;
    if (this.shownExplanation !== null) {
      const { p, at } = this.shownExplanation;
      explanation = {
        agentName: p.agent_name,
        text: p.text,
        visible: now - at <= EXPLANATION_TTL,
      };
    }
    return {
      welcomeVisible: this.last === null,
      explainEnabled: connected,
      music: this.last
        ? this.last.music
        : { track: "-", playing: false, volume: 0.5 },
      explanation,
      ui: this.last,
    };
  }
}

/**
 * World point to map pixels with the ego pinned at `anchor`, heading up,
 * world scrolling underneath.
 */
export function worldToScreen(
  px: number,
  py: number,
  ego: { x: number; y: number; heading: number },
  anchor: { x: number; y: number },
  scale: number = MAP_SCALE,
): { x: number; y: number } {
  const dx = px - ego.x;
  const dy = py - ego.y;
  // rotate so the ego heading points toward -y (screen up)
  const a = -(ego.heading - Math.PI / 2);
  const rx = dx * Math.cos(a) - dy * Math.sin(a);
  const ry = dx * Math.sin(a) + dy * Math.cos(a);
  return { x: anchor.x + rx * scale, y: anchor.y - ry * scale };
}
