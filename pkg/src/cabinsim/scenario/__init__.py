from .script import (
    AgentPolicy,
    EmergencyStop,
    EventAction,
    EventKind,
    ParseError,
    PolicyVariant,
    PositionTrigger,
    ScenarioEvent,
    ScenarioScript,
    SetTargetSpeed,
    SpawnActor,
    TimeTrigger,
    ValidationError,
    load_scenario,
    serialize_scenario,
)
from .engine import (
    EventEffects,
    ExplanationEvent,
    ScenarioEngine,
    apply_event,
    eval_triggers,
    explanation_policy,
)
from .templates import TEMPLATE_NAMES, bundled_scenario

__all__ = [
    "AgentPolicy",
    "EmergencyStop",
    "EventAction",
    "EventKind",
    "ParseError",
    "PolicyVariant",
    "PositionTrigger",
    "ScenarioEvent",
    "ScenarioScript",
    "SetTargetSpeed",
    "SpawnActor",
    "TimeTrigger",
    "ValidationError",
    "load_scenario",
    "serialize_scenario",
    "EventEffects",
    "ExplanationEvent",
    "ScenarioEngine",
    "apply_event",
    "eval_triggers",
    "explanation_policy",
    "TEMPLATE_NAMES",
    "bundled_scenario",
]
