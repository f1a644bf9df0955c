// WebSocket session to the bridge: hello handshake, heartbeats, staleness
// tracking, exponential reconnect, and a short-lived outbound queue so taps
// during a reconnect are not lost (but go stale after 2 s).
//
// Timing is driven externally: the app calls tick(now) from its frame loop,
// tests call it directly. No hidden timers.

import {
  Envelope,
  EnvelopeWriter,
  ExplanationPayload,
  MessageType,
  UiStatePayload,
  decodeEnvelope,
  encodeEnvelope,
} from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionOptions {
  url: string;
  socketFactory?: SocketFactory;
  clock?: () => number; // seconds
}

const HEARTBEAT_INTERVAL = 1.0; // s
const STALE_AFTER = 1.0; // s without ui_state while open
const QUEUE_TTL = 2.0; // s before an unsent message is dropped
const BACKOFF_BASE = 0.5; // s
const BACKOFF_MAX = 8.0; // s

export type ConnectionState = "idle" | "connecting" | "open" | "reconnecting";

export class CockpitConnection {
  state: ConnectionState = "idle";
  connectCount = 0;

  onOpen: (() => void) | null = null;
  onUiState: ((p: UiStatePayload) => void) | null = null;
  onExplanation: ((p: ExplanationPayload) => void) | null = null;
  onSessionEnd: ((p: Record<string, unknown>) => void) | null = null;

  private socket: SocketLike | null = null;
  private writer: EnvelopeWriter;
  private clock: () => number;
  private factory: SocketFactory;
  private url: string;
  private queue: { type: MessageType; payload: Record<string, unknown>; at: number }[] = [];
  private lastUiStateAt: number | null = null;
  private lastHeartbeatAt = 0;
  private reconnectAt: number | null = null;
  private backoff = BACKOFF_BASE;

  constructor(opts: ConnectionOptions) {
    this.url = opts.url;
    this.factory =
      opts.socketFactory ?? ((url: string) => new WebSocket(url) as unknown as SocketLike);
    this.clock = opts.clock ?? (() => performance.now() / 1000);
    this.writer = new EnvelopeWriter(this.clock);
  }

  connect(): void {
    this.state = this.connectCount === 0 ? "connecting" : "reconnecting";
    this.reconnectAt = null;
    const sock = this.factory(this.url);
    this.socket = sock;
    sock.onopen = () => {
      if (this.socket !== sock) return;
      this.state = "open";
      this.connectCount += 1;
      this.backoff = BACKOFF_BASE;
      this.lastUiStateAt = null;
      this.sendNow("hello", { role: "ui" });
      this.flushQueue();
      this.onOpen?.();
    };
    sock.onmessage = (ev) => {
      if (this.socket !== sock) return;
      this.handleFrame(typeof ev.data === "string" ? ev.data : "");
    };
    const drop = () => {
      if (this.socket !== sock) return;
      this.socket = null;
      this.state = "reconnecting";
      this.reconnectAt = this.clock() + this.backoff;
      this.backoff = Math.min(this.backoff * 2, BACKOFF_MAX);
    };
    sock.onclose = drop;
    sock.onerror = drop;
  }

  private handleFrame(text: string): void {
    const env = decodeEnvelope(text);
    if (env === null) return; // malformed frames never break the session
    switch (env.type) {
      case "ui_state":
        this.lastUiStateAt = this.clock();
        this.onUiState?.(env.payload as unknown as UiStatePayload);
        break;
      case "explanation":
        this.onExplanation?.(env.payload as unknown as ExplanationPayload);
        break;
      case "session_end":
        this.onSessionEnd?.(env.payload);
        break;
      default:
        break; // heartbeat, force_feedback, scenario_event: nothing to render
    }
  }

  get isOpen(): boolean {
    return this.state === "open";
  }

  /** True when open but no ui_state arrived within the staleness budget. */
  isStale(now?: number): boolean {
    if (this.state !== "open") return true;
    const t = now ?? this.clock();
    return this.lastUiStateAt === null || t - this.lastUiStateAt > STALE_AFTER;
  }

  private sendNow(type: MessageType, payload: Record<string, unknown>): void {
    this.socket?.send(encodeEnvelope(this.writer.make(type, payload)));
  }

  /** Send immediately when open; otherwise hold up to QUEUE_TTL for reconnect. */
  send(type: MessageType, payload: Record<string, unknown> = {}): void {
    if (this.isOpen && this.socket) {
      this.sendNow(type, payload);
    } else {
      this.queue.push({ type, payload, at: this.clock() });
    }
  }

  private flushQueue(): void {
    const now = this.clock();
    const pending = this.queue.filter((m) => now - m.at <= QUEUE_TTL);
    this.queue = [];
    for (const m of pending) this.sendNow(m.type, m.payload);
  }

  /** Frame-loop housekeeping: heartbeats, queue expiry, reconnect attempts. */
  tick(now?: number): void {
    const t = now ?? this.clock();
    this.queue = this.queue.filter((m) => t - m.at <= QUEUE_TTL);
    if (this.isOpen && t - this.lastHeartbeatAt >= HEARTBEAT_INTERVAL) {
      this.lastHeartbeatAt = t;
      this.sendNow("heartbeat", {});
    }
    if (this.state === "reconnecting" && this.reconnectAt !== null && t >= this.reconnectAt) {
      this.connect();
    }
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
    this.state = "idle";
  }
}
