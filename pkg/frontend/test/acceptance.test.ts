// Cockpit conformance: the four release checks for the browser client.

import { describe, expect, it } from "vitest";

import { CockpitConnection } from "../src/connection.js";
import { ClusterViewModel } from "../src/cluster.js";
import { CenterStackViewModel } from "../src/centerstack.js";
import { TouchDispatcher } from "../src/touch.js";
import { FakeClock, FakeSocket, serverFrame, uiState } from "./helpers.js";

function cockpit() {
  const clock = new FakeClock();
  const sockets: FakeSocket[] = [];
  const conn = new CockpitConnection({
    url: "ws://test",
    clock: clock.now,
    socketFactory: () => {
      const s = new FakeSocket();
      sockets.push(s);
      return s;
    },
  });
  const cluster = new ClusterViewModel();
  const stack = new CenterStackViewModel();
  conn.onOpen = () => cluster.startSweep(clock.now());
  conn.onUiState = (u) => {
    cluster.update(u);
    stack.update(u);
  };
  const touch = new TouchDispatcher(conn);
  return { clock, sockets, conn, cluster, stack, touch };
}

describe("cockpit conformance", () => {
  it("renders 36 km/h within one frame of a 10 m/s ui_state", () => {
    const { sockets, conn, cluster, clock } = cockpit();
    conn.connect();
    sockets[0].open();
    sockets[0].receive(serverFrame("ui_state", uiState({ speed: 10.0 }) as never));
    // no time passes: the very next view reflects the new state
    const v = cluster.view(clock.now());
    expect(v.speedKmh).toBeCloseTo(36.0, 12);
    expect(v.speedText).toBe("36");
  });

  it("explain-button tap emits exactly one request_explanation", () => {
    const { sockets, conn, touch } = cockpit();
    conn.connect();
    sockets[0].open();
    touch.tap("explain_button", 0.8, 0.9);
    expect(sockets[0].sentOfType("request_explanation")).toHaveLength(1);
    const touches = sockets[0].sentOfType("touch_event");
    expect(touches).toHaveLength(1);
    expect(touches[0].payload).toMatchObject({ target_id: "explain_button",
                                               action: "tap" });
    // a background tap adds a touch_event but no further requests
    touch.tap("background", 0.1, 0.1);
    expect(sockets[0].sentOfType("request_explanation")).toHaveLength(1);
  });

  it("startup sweep runs exactly once per connection", () => {
    const { sockets, conn, cluster, clock } = cockpit();
    conn.connect();
    sockets[0].open();
    expect(cluster.sweepCount).toBe(1);
    for (let i = 0; i < 600; i++) {
      clock.advance(1 / 60);
      conn.tick();
      cluster.view(clock.now());
    }
    expect(cluster.sweepCount).toBe(1); // never re-fires mid-connection
    sockets[0].drop();
    clock.advance(1.0);
    conn.tick(); // reconnect attempt
    sockets[1].open();
    expect(cluster.sweepCount).toBe(2); // once more on the fresh connection
  });

  it("volume slider round-trips 0.5 through the protocol", () => {
    const { sockets, conn, stack, touch, clock } = cockpit();
    conn.connect();
    sockets[0].open();
    touch.setVolume(0.5);
    const sent = sockets[0].sentOfType("touch_event");
    expect(sent).toHaveLength(1);
    expect(sent[0].payload).toMatchObject({ target_id: "volume_slider", value: 0.5 });
    // bridge applies it and echoes the new state back
    sockets[0].receive(serverFrame(
      "ui_state",
      uiState({ music: { track: "Sunrise Drive", playing: false, volume: 0.5 } }) as never,
    ));
    expect(stack.view(clock.now(), conn.isOpen).music.volume).toBe(0.5);
  });
});
