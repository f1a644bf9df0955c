// Wire envelopes shared with the simulator bridge: one JSON object per
// message, per-connection increasing seq, type-specific payload.

export const MESSAGE_TYPES = [
  "hello",
  "heartbeat",
  "control_input",
  "touch_event",
  "gaze_sample",
  "force_feedback",
  "ui_state",
  "explanation",
  "request_explanation",
  "scenario_event",
  "session_end",
] as const;

export type MessageType = (typeof MESSAGE_TYPES)[number];

export interface Envelope {
  type: MessageType;
  seq: number;
  t_mono: number;
  payload: Record<string, unknown>;
}

export interface DetectedContour {
  actor_id: number;
  contour: [number, number][];
  range: number;
}

export interface ActorState {
  id: number;
  kind: string;
  x: number;
  y: number;
  heading: number;
  active: boolean;
}

export interface UiStatePayload {
  tick: number;
  t: number;
  speed: number; // m/s
  gear: string;
  steering_norm: number;
  throttle: number;
  brake: number;
  ego: { x: number; y: number; heading: number };
  detected: DetectedContour[];
  actors: ActorState[];
  explanation: { text: string; agent_name: string } | null;
  music: { track: string; playing: boolean; volume: number };
}

export interface ExplanationPayload {
  event_id: string;
  text: string;
  agent_name: string;
  trigger_source: string;
  modality: string;
}

const TYPE_SET = new Set<string>(MESSAGE_TYPES);

export function encodeEnvelope(env: Envelope): string {
  return JSON.stringify(env);
}

/** Parse one frame; returns null for anything malformed or of unknown type. */
export function decodeEnvelope(text: string): Envelope | null {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null) return null;
  const rec = obj as Record<string, unknown>;
  if (typeof rec.type !== "string" || !TYPE_SET.has(rec.type)) return null;
  if (typeof rec.seq !== "number" || typeof rec.t_mono !== "number") return null;
  const payload =
    typeof rec.payload === "object" && rec.payload !== null
      ? (rec.payload as Record<string, unknown>)
      : {};
  return { type: rec.type as MessageType, seq: rec.seq, t_mono: rec.t_mono, payload };
}

/** Per-connection outbound envelope builder with its own seq counter. */
export class EnvelopeWriter {
  private seq = 0;

  constructor(private clock: () => number) {}

  make(type: MessageType, payload: Record<string, unknown> = {}): Envelope {
    this.seq += 1;
    return { type, seq: this.seq, t_mono: this.clock(), payload };
  }
}
