import { describe, expect, it } from "vitest";

import { ClusterViewModel, SWEEP_DURATION } from "../src/cluster.js";
import { uiState } from "./helpers.js";

describe("instrument cluster view model", () => {
  it("converts m/s to km/h", () => {
    const vm = new ClusterViewModel();
    vm.update(uiState({ speed: 10.0 }));
    const v = vm.view(0);
    expect(v.speedKmh).toBeCloseTo(36.0, 10);
    expect(v.speedText).toBe("36");
  });

  it("shows only the latest state", () => {
    const vm = new ClusterViewModel();
    vm.update(uiState({ speed: 5.0, gear: "drive" }));
    vm.update(uiState({ speed: 2.0, gear: "reverse", brake: 0.6 }));
    const v = vm.view(0);
    expect(v.speedKmh).toBeCloseTo(7.2);
    expect(v.gear).toBe("reverse");
    expect(v.brake).toBe(0.6);
  });

  it("has no data before the first update", () => {
    const vm = new ClusterViewModel();
    expect(vm.view(0).hasData).toBe(false);
  });

  it("sweep lasts exactly the sweep duration", () => {
    const vm = new ClusterViewModel();
    vm.startSweep(10.0);
    expect(vm.view(10.0).sweepActive).toBe(true);
    expect(vm.view(10.0 + SWEEP_DURATION).sweepActive).toBe(true);
    expect(vm.view(10.0 + SWEEP_DURATION + 0.01).sweepActive).toBe(false);
  });

  it("ignores repeated sweep triggers while one is playing", () => {
    const vm = new ClusterViewModel();
    vm.startSweep(0.0);
    vm.startSweep(0.5);
    vm.startSweep(1.0);
    expect(vm.sweepCount).toBe(1);
  });

  it("sweeps again on a later trigger (reconnect)", () => {
    const vm = new ClusterViewModel();
    vm.startSweep(0.0);
    vm.startSweep(30.0);
    expect(vm.sweepCount).toBe(2);
  });
});
