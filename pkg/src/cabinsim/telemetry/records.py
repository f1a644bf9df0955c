"""Session log record types: one tagged-union line per sample or event.

Every record serializes to a flat JSON object carrying a "rec" tag; the
remaining keys are the dataclass fields. Vehicle snapshots nest the state
and the input that produced it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Union

from ..sim import ControlInput, Gear, VehicleState

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SessionHeader:
    seed: int
    scenario_id: str
    start_wall: str            # ISO timestamp, metadata only
    version: str
    schema_version: int = SCHEMA_VERSION
    t: float = 0.0


@dataclass(frozen=True)
class GazeSample:
    t: float
    origin: tuple[float, float, float]        # head frame [m]
    direction: tuple[float, float, float]     # unit vector
    pupil_l: float                            # [mm], 0 when invalid
    pupil_r: float
    valid_l: bool
    valid_r: bool


@dataclass(frozen=True)
class TouchSample:
    t: float
    x_norm: float              # [0, 1] screen-relative
    y_norm: float
    target_id: str
    action: str                # down | up | tap


@dataclass(frozen=True)
class VehicleSample:
    t: float
    tick: int
    state: VehicleState
    input: ControlInput


@dataclass(frozen=True)
class EventMarker:
    t: float
    event_id: str
    kind: str
    safety_critical: bool
    explanation_issued: bool


@dataclass(frozen=True)
class ExplanationRecord:
    t: float
    event_id: str
    text: str
    modality: str              # text_and_speech
    trigger_source: str        # proactive | user_request
    agent_name: str


@dataclass(frozen=True)
class InputFrame:
    """Write-ahead copy of an inbound wire frame, logged before it takes effect."""
    t: float
    channel: str               # control_input | request_explanation | ...
    payload: dict
    applied: bool = True


@dataclass(frozen=True)
class SessionEnd:
    t: float
    reason: str


TelemetryRecord = Union[
    SessionHeader, GazeSample, TouchSample, VehicleSample,
    EventMarker, ExplanationRecord, InputFrame, SessionEnd,
]

_TAGS: dict[str, type] = {
    "header": SessionHeader,
    "gaze": GazeSample,
    "touch": TouchSample,
    "vehicle": VehicleSample,
    "event": EventMarker,
    "explanation": ExplanationRecord,
    "input": InputFrame,
    "end": SessionEnd,
}
_TAG_OF = {cls: tag for tag, cls in _TAGS.items()}


def record_to_dict(rec: TelemetryRecord) -> dict:
    d = {"rec": _TAG_OF[type(rec)]}
    d.update(asdict(rec))
    if isinstance(rec, VehicleSample):
        d["state"]["gear"] = rec.state.gear.value
    return d


def record_from_dict(d: dict) -> TelemetryRecord:
    cls = _TAGS[d["rec"]]
    kwargs = {}
    for f in fields(cls):
        v = d[f.name]
        if f.name in ("origin", "direction"):
            v = tuple(float(c) for c in v)
        kwargs[f.name] = v
    if cls is VehicleSample:
        state = dict(kwargs["state"])
        state["gear"] = Gear(state["gear"])
        kwargs["state"] = VehicleState(**state)
        kwargs["input"] = ControlInput(**kwargs["input"])
    return cls(**kwargs)
