import { describe, expect, it } from "vitest";

import {
  CenterStackViewModel,
  EXPLANATION_TTL,
  MAP_SCALE,
  worldToScreen,
} from "../src/centerstack.js";
import { uiState } from "./helpers.js";

const EXPL = { event_id: "e1", text: "slowing down", agent_name: "Coda",
               trigger_source: "proactive", modality: "text_and_speech" };

describe("center stack view model", () => {
  it("shows the welcome screen until the first ui_state", () => {
    const vm = new CenterStackViewModel();
    expect(vm.view(0, true).welcomeVisible).toBe(true);
    vm.update(uiState());
    expect(vm.view(0, true).welcomeVisible).toBe(false);
  });

  it("explain button enabled only while connected", () => {
    const vm = new CenterStackViewModel();
    expect(vm.view(0, false).explainEnabled).toBe(false);
    expect(vm.view(0, true).explainEnabled).toBe(true);
  });

  it("explanation panel shows agent and text, then auto-hides", () => {
    const vm = new CenterStackViewModel();
    vm.showExplanation(EXPL, 5.0);
    let v = vm.view(5.0, true);
    expect(v.explanation).toMatchObject({ agentName: "Coda", text: "slowing down",
                                          visible: true });
    v = vm.view(5.0 + EXPLANATION_TTL + 0.01, true);
    expect(v.explanation?.visible).toBe(false);
  });

  it("a second explanation replaces the first", () => {
    const vm = new CenterStackViewModel();
    vm.showExplanation(EXPL, 1.0);
    vm.showExplanation({ ...EXPL, event_id: "e2", text: "merging" }, 2.0);
    const v = vm.view(2.0, true);
    expect(v.explanation?.text).toBe("merging");
  });

  it("music state comes straight from ui_state", () => {
    const vm = new CenterStackViewModel();
    vm.update(uiState({ music: { track: "Night Loop", playing: true, volume: 0.25 } }));
    expect(vm.view(0, true).music).toEqual({ track: "Night Loop", playing: true,
                                             volume: 0.25 });
  });
});

describe("ego-anchored map projection", () => {
  const anchor = { x: 210, y: 260 };

  it("pins the ego at the anchor", () => {
    const p = worldToScreen(3, 4, { x: 3, y: 4, heading: 1.2 }, anchor);
    expect(p.x).toBeCloseTo(anchor.x);
    expect(p.y).toBeCloseTo(anchor.y);
  });

  it("a point ahead of the ego appears straight up, 6 px per meter", () => {
    const ego = { x: 10, y: 20, heading: Math.PI / 4 };
    const ahead = { x: 10 + 5 * Math.cos(ego.heading), y: 20 + 5 * Math.sin(ego.heading) };
    const p = worldToScreen(ahead.x, ahead.y, ego, anchor);
    expect(p.x).toBeCloseTo(anchor.x);
    expect(p.y).toBeCloseTo(anchor.y - 5 * MAP_SCALE);
  });

  it("a point to the right of the heading appears to the right", () => {
    const ego = { x: 0, y: 0, heading: Math.PI / 2 }; // facing +y
    const p = worldToScreen(2, 0, ego, anchor); // world +x is the ego's right
    expect(p.x).toBeCloseTo(anchor.x + 2 * MAP_SCALE);
    expect(p.y).toBeCloseTo(anchor.y);
  });
});
