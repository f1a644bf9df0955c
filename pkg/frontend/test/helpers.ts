import { SocketLike } from "../src/connection.js";
import { Envelope, UiStatePayload } from "../src/protocol.js";

export class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onopen: (() => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: (() => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
  }

  // test-side controls
  open(): void {
    this.onopen?.();
  }

  drop(): void {
    this.onclose?.();
  }

  receive(env: Partial<Envelope>): void {
    this.onmessage?.({ data: JSON.stringify(env) });
  }

  sentOfType(type: string): Envelope[] {
    return this.sent.map((s) => JSON.parse(s) as Envelope).filter((e) => e.type === type);
  }
}

export class FakeClock {
  t = 0;
  now = (): number => this.t;
  advance(dt: number): void {
    this.t += dt;
  }
}

export function uiState(overrides: Partial<UiStatePayload> = {}): UiStatePayload {
  return {
    tick: 1,
    t: 1 / 60,
    speed: 0,
    gear: "drive",
    steering_norm: 0,
    throttle: 0,
    brake: 0,
    ego: { x: 0, y: 0, heading: 0 },
    detected: [],
    actors: [],
    explanation: null,
    music: { track: "Sunrise Drive", playing: false, volume: 0.5 },
    ...overrides,
  };
}

let seq = 0;

export function serverFrame(type: string, payload: Record<string, unknown>): Partial<Envelope> {
  seq += 1;
  return { type: type as Envelope["type"], seq, t_mono: seq / 10, payload };
}
