"""Scenario script model and its JSON document format.

A scenario is one JSON document: a route, a target speed, the explanation
policy of the driving agent, initial traffic actors, and a list of events
with time or position triggers. load/serialize round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from ..sim import ActorKind, TrafficActor, Waypoint


class ParseError(Exception):
    pass


class ValidationError(Exception):
    pass


class PolicyVariant(str, Enum):
    NO_EXPLANATIONS = "no_explanations"
    PROACTIVE = "proactive"
    ON_DEMAND = "on_demand"


class EventKind(str, Enum):
    PEDESTRIAN_CROSSING = "pedestrian_crossing"
    CUT_IN = "cut_in"
    EMERGENCY_STOP = "emergency_stop"
    CUSTOM = "custom"


@dataclass(frozen=True)
class AgentPolicy:
    variant: PolicyVariant
    agent_name: str
    request_window_s: float = 10.0   # how long after an event a request is honored


@dataclass(frozen=True)
class TimeTrigger:
    at_time: float                   # fires when world.time >= at_time [s]


@dataclass(frozen=True)
class PositionTrigger:
    x: float
    y: float
    radius: float                    # fires when |ego - (x,y)| <= radius [m]


Trigger = Union[TimeTrigger, PositionTrigger]


@dataclass(frozen=True)
class SpawnActor:
    kind: ActorKind
    path: tuple[Waypoint, ...]
    speed: float


@dataclass(frozen=True)
class SetTargetSpeed:
    speed: float


@dataclass(frozen=True)
class EmergencyStop:
    pass


EventAction = Union[SpawnActor, SetTargetSpeed, EmergencyStop]


@dataclass(frozen=True)
class ScenarioEvent:
    id: str
    trigger: Trigger
    kind: EventKind
    safety_critical: bool
    explanation_text: str
    actions: tuple[EventAction, ...] = ()


@dataclass(frozen=True)
class ScenarioScript:
    id: str
    route: tuple[Waypoint, ...]
    target_speed: float
    policy: AgentPolicy
    events: tuple[ScenarioEvent, ...] = ()
    actors: tuple[TrafficActor, ...] = ()


# ---------------------------------------------------------------- validation

def validate_script(script: ScenarioScript) -> None:
    """Raise ValidationError naming the offending field on any broken invariant."""
    if len(script.route) < 2:
        raise ValidationError("route: needs at least 2 waypoints")
    if script.target_speed < 0:
        raise ValidationError("target_speed: must be >= 0")
    if script.policy.variant is PolicyVariant.ON_DEMAND and script.policy.request_window_s <= 0:
        raise ValidationError("policy.request_window_s: must be > 0 for on_demand")
    seen: set[str] = set()
    for ev in script.events:
        if ev.id in seen:
            raise ValidationError(f"duplicate event id {ev.id}")
        seen.add(ev.id)
        if isinstance(ev.trigger, PositionTrigger) and ev.trigger.radius <= 0:
            raise ValidationError(f"events[{ev.id}].trigger.radius: must be > 0")
        if ev.safety_critical and not ev.explanation_text:
            raise ValidationError(
                f"events[{ev.id}].explanation_text: required for safety-critical events")
        for action in ev.actions:
            if isinstance(action, SpawnActor) and len(action.path) < 2:
                raise ValidationError(f"events[{ev.id}].actions: spawn path needs 2 waypoints")
    for actor in script.actors:
        if actor.active and len(actor.path) < 2:
            raise ValidationError(f"actors[{actor.id}].path: needs at least 2 waypoints")


# --------------------------------------------------------------- (de)serialize

def _trigger_to_dict(t: Trigger) -> dict:
    if isinstance(t, TimeTrigger):
        return {"at_time": t.at_time}
    return {"at_position": [t.x, t.y], "radius": t.radius}


def _trigger_from_dict(d: dict, where: str) -> Trigger:
    if "at_time" in d:
        return TimeTrigger(at_time=float(d["at_time"]))
    if "at_position" in d:
        x, y = d["at_position"]
        return PositionTrigger(x=float(x), y=float(y), radius=float(d.get("radius", 0.0)))
    raise ValidationError(f"{where}.trigger: needs at_time or at_position")


def _action_to_dict(a: EventAction) -> dict:
    if isinstance(a, SpawnActor):
        return {"action": "spawn_actor", "kind": a.kind.value,
                "path": [list(p) for p in a.path], "speed": a.speed}
    if isinstance(a, SetTargetSpeed):
        return {"action": "set_target_speed", "speed": a.speed}
    return {"action": "emergency_stop"}


def _action_from_dict(d: dict, where: str) -> EventAction:
    name = d.get("action")
    if name == "spawn_actor":
        return SpawnActor(kind=ActorKind(d["kind"]),
                          path=tuple((float(x), float(y)) for x, y in d["path"]),
                          speed=float(d["speed"]))
    if name == "set_target_speed":
        return SetTargetSpeed(speed=float(d["speed"]))
    if name == "emergency_stop":
        return EmergencyStop()
    raise ValidationError(f"{where}.actions: unknown action {name!r}")


def _actor_to_dict(a: TrafficActor) -> dict:
    return {"id": a.id, "kind": a.kind.value, "path": [list(p) for p in a.path],
            "speed": a.speed, "active": a.active}


def _actor_from_dict(d: dict) -> TrafficActor:
    actor = TrafficActor.spawn(id=int(d["id"]), kind=ActorKind(d["kind"]),
                               path=tuple((float(x), float(y)) for x, y in d["path"]),
                               speed=float(d["speed"]))
    if not d.get("active", True):
        actor = replace(actor, active=False)
    return actor


def serialize_scenario(script: ScenarioScript) -> str:
    doc = {
        "id": script.id,
        "route": [list(p) for p in script.route],
        "target_speed": script.target_speed,
        "policy": {
            "variant": script.policy.variant.value,
            "request_window_s": script.policy.request_window_s,
            "agent_name": script.policy.agent_name,
        },
        "events": [
            {
                "id": ev.id,
                "trigger": _trigger_to_dict(ev.trigger),
                "kind": ev.kind.value,
                "safety_critical": ev.safety_critical,
                "explanation_text": ev.explanation_text,
                "actions": [_action_to_dict(a) for a in ev.actions],
            }
            for ev in script.events
        ],
        "actors": [_actor_to_dict(a) for a in script.actors],
    }
    return json.dumps(doc, indent=2)


def load_scenario(document: str | bytes | dict) -> ScenarioScript:
    """Parse and fully validate a scenario document (JSON text or parsed dict)."""
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"not valid JSON: {e}") from e
    else:
        doc = document
    if not isinstance(doc, dict):
        raise ParseError("scenario document must be a JSON object")

    try:
        policy_doc = doc["policy"]
        policy = AgentPolicy(
            variant=PolicyVariant(policy_doc["variant"]),
            agent_name=str(policy_doc.get("agent_name", "")),
            request_window_s=float(policy_doc.get("request_window_s", 10.0)),
        )
        events = tuple(
            ScenarioEvent(
                id=str(ev["id"]),
                trigger=_trigger_from_dict(ev["trigger"], f"events[{ev.get('id')}]"),
                kind=EventKind(ev.get("kind", "custom")),
                safety_critical=bool(ev.get("safety_critical", False)),
                explanation_text=str(ev.get("explanation_text", "")),
                actions=tuple(_action_from_dict(a, f"events[{ev.get('id')}]")
                              for a in ev.get("actions", [])),
            )
            for ev in doc.get("events", [])
        )
        script = ScenarioScript(
            id=str(doc["id"]),
            route=tuple((float(x), float(y)) for x, y in doc["route"]),
            target_speed=float(doc["target_speed"]),
            policy=policy,
            events=events,
            actors=tuple(_actor_from_dict(a) for a in doc.get("actors", [])),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed scenario document: {e!r}") from e
    validate_script(script)
    return script
