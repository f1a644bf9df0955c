"""Wire format: one UTF-8 JSON envelope per line, over TCP or WebSocket alike.

Envelopes carry a registered type, a per-connection strictly increasing
sequence number, the sender's monotonic timestamp, and a type-specific
payload object. Unknown payload fields pass through untouched so newer
clients can talk to older servers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

MESSAGE_TYPES = frozenset({
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
})


class ProtocolError(Exception):
    pass


class MalformedFrame(ProtocolError):
    pass


class UnknownType(ProtocolError):
    pass


class NonMonotonicSeq(ProtocolError):
    pass


@dataclass(frozen=True)
class Envelope:
    type: str
    seq: int
    t_mono: float
    payload: dict = field(default_factory=dict)


def encode(envelope: Envelope) -> bytes:
    """One newline-terminated JSON line; numbers keep full precision (repr round-trip)."""
    obj = {"type": envelope.type, "seq": envelope.seq,
           "t_mono": envelope.t_mono, "payload": envelope.payload}
    return json.dumps(obj, separators=(",", ":")).encode("utf-8") + b"\n"


def decode(line: bytes | str, last_seq: int | None = None) -> Envelope:
    """Parse one frame; raises MalformedFrame / UnknownType / NonMonotonicSeq.

    Errors are reportable, never fatal: callers drop the frame and keep the
    connection open. Passing the previous accepted seq enables the
    monotonicity check.
    """
    try:
        obj = json.loads(line)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise MalformedFrame(f"not valid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise MalformedFrame("frame is not a JSON object")
    try:
        mtype = obj["type"]
        seq = obj["seq"]
        t_mono = obj["t_mono"]
    except KeyError as e:
        raise MalformedFrame(f"missing field {e.args[0]!r}") from e
    if not isinstance(mtype, str) or mtype not in MESSAGE_TYPES:
        raise UnknownType(f"unknown message type {mtype!r}")
    if not isinstance(seq, int) or isinstance(seq, bool):
        raise MalformedFrame("seq must be an integer")
    if not isinstance(t_mono, (int, float)) or isinstance(t_mono, bool):
        raise MalformedFrame("t_mono must be a number")
    payload = obj.get("payload", {})
    if not isinstance(payload, dict):
        raise MalformedFrame("payload must be an object")
    if last_seq is not None and seq <= last_seq:
        raise NonMonotonicSeq(f"seq {seq} after {last_seq}")
    return Envelope(type=mtype, seq=seq, t_mono=float(t_mono), payload=payload)


class FrameDecoder:
    """Per-connection decoder holding the last accepted sequence number."""

    def __init__(self):
        self.last_seq: int | None = None

    def decode(self, line: bytes | str) -> Envelope:
        env = decode(line, last_seq=self.last_seq)
        self.last_seq = env.seq
        return env
