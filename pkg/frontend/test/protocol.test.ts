import { describe, expect, it } from "vitest";

import { EnvelopeWriter, decodeEnvelope, encodeEnvelope } from "../src/protocol.js";

describe("envelope codec", () => {
  it("round-trips a frame", () => {
    const env = { type: "ui_state" as const, seq: 3, t_mono: 1.25,
                  payload: { speed: 10.0 } };
    expect(decodeEnvelope(encodeEnvelope(env))).toEqual(env);
  });

  it("rejects malformed json", () => {
    expect(decodeEnvelope("{nope")).toBeNull();
    expect(decodeEnvelope("42")).toBeNull();
  });

  it("rejects unknown types and missing fields", () => {
    expect(decodeEnvelope('{"type":"warp","seq":1,"t_mono":0,"payload":{}}')).toBeNull();
    expect(decodeEnvelope('{"type":"ui_state","seq":1}')).toBeNull();
  });

  it("tolerates a missing payload", () => {
    const env = decodeEnvelope('{"type":"heartbeat","seq":1,"t_mono":0}');
    expect(env?.payload).toEqual({});
  });

  it("keeps unknown payload fields", () => {
    const env = decodeEnvelope(
      '{"type":"ui_state","seq":1,"t_mono":0,"payload":{"future":true}}');
    expect(env?.payload.future).toBe(true);
  });

  it("writer emits strictly increasing seq", () => {
    const w = new EnvelopeWriter(() => 2.0);
    const a = w.make("heartbeat");
    const b = w.make("touch_event", { target_id: "background" });
    expect(a.seq).toBe(1);
    expect(b.seq).toBe(2);
    expect(b.t_mono).toBe(2.0);
  });
});
