from .records import (
    EventMarker,
    ExplanationRecord,
    GazeSample,
    InputFrame,
    SessionEnd,
    SessionHeader,
    TouchSample,
    VehicleSample,
    TelemetryRecord,
    record_from_dict,
    record_to_dict,
)
from .writer import IoError, NonMonotonicTime, SessionExists, SessionWriter, open_session
from .reader import CorruptRecord, MissingHeader, replay, load_session
from .synth import SynthGazeConfig, SyntheticGaze, synth_gaze

__all__ = [
    "EventMarker",
    "ExplanationRecord",
    "GazeSample",
    "InputFrame",
    "SessionEnd",
    "SessionHeader",
    "TouchSample",
    "VehicleSample",
    "TelemetryRecord",
    "record_from_dict",
    "record_to_dict",
    "IoError",
    "NonMonotonicTime",
    "SessionExists",
    "SessionWriter",
    "open_session",
    "CorruptRecord",
    "MissingHeader",
    "replay",
    "load_session",
    "SynthGazeConfig",
    "SyntheticGaze",
    "synth_gaze",
]
