"""Bundled template scenarios, one per explanation policy.

All three share one course and the same four safety-critical events (the
last an emergency stop) so sessions differ only in how the driving agent
explains itself. Use serialize_scenario to export them as JSON documents.
"""

from __future__ import annotations

import math

from ..sim import ActorKind, TrafficActor
from .script import (
    AgentPolicy,
    EmergencyStop,
    EventKind,
    PolicyVariant,
    PositionTrigger,
    ScenarioEvent,
    ScenarioScript,
    SetTargetSpeed,
    SpawnActor,
    TimeTrigger,
    validate_script,
)

TEMPLATE_NAMES = ("nelo", "coda", "lumo")

_POLICIES = {
    "nelo": AgentPolicy(variant=PolicyVariant.NO_EXPLANATIONS, agent_name="Nelo"),
    "coda": AgentPolicy(variant=PolicyVariant.PROACTIVE, agent_name="Coda"),
    "lumo": AgentPolicy(variant=PolicyVariant.ON_DEMAND, agent_name="Lumo",
                        request_window_s=10.0),
}


def _arc(cx: float, cy: float, r: float, a0: float, a1: float, n: int):
    return [(cx + r * math.cos(a0 + (a1 - a0) * i / n),
             cy + r * math.sin(a0 + (a1 - a0) * i / n)) for i in range(1, n + 1)]


def _course() -> tuple[tuple[float, float], ...]:
    # ~1.3 km: east leg, left turn, north leg, right turn, east leg
    pts: list[tuple[float, float]] = [(0.0, 0.0)]
    pts += [(float(x), 0.0) for x in range(50, 401, 50)]
    pts += _arc(400.0, 60.0, 60.0, -math.pi / 2.0, 0.0, 15)
    pts += [(460.0, float(y)) for y in range(110, 401, 50)]
    pts += _arc(520.0, 400.0, 60.0, math.pi, math.pi / 2.0, 15)
    pts += [(float(x), 460.0) for x in range(570, 901, 50)]
    return tuple(pts)


def _events() -> tuple[ScenarioEvent, ...]:
    return (
        ScenarioEvent(
            id="e1_pedestrian",
            trigger=PositionTrigger(x=150.0, y=0.0, radius=8.0),
            kind=EventKind.PEDESTRIAN_CROSSING,
            safety_critical=True,
            explanation_text="I am slowing down: a pedestrian is stepping onto the road ahead.",
            actions=(
                SpawnActor(kind=ActorKind.PEDESTRIAN,
                           path=((170.0, 10.0), (170.0, -10.0)), speed=1.4),
                SetTargetSpeed(speed=7.0),
            ),
        ),
        ScenarioEvent(
            id="e2_cut_in",
            trigger=TimeTrigger(at_time=45.0),
            kind=EventKind.CUT_IN,
            safety_critical=True,
            explanation_text="A vehicle is merging into our lane; I am keeping a safe gap.",
            actions=(
                SpawnActor(kind=ActorKind.CAR,
                           path=((380.0, 4.0), (420.0, 0.5), (458.0, 30.0)), speed=9.0),
                SetTargetSpeed(speed=10.0),
            ),
        ),
        ScenarioEvent(
            id="e3_construction",
            trigger=PositionTrigger(x=460.0, y=300.0, radius=10.0),
            kind=EventKind.CUSTOM,
            safety_critical=True,
            explanation_text="Roadworks ahead; I am reducing speed through the narrow section.",
            actions=(SetTargetSpeed(speed=6.0),),
        ),
        ScenarioEvent(
            id="e4_emergency_stop",
            trigger=TimeTrigger(at_time=95.0),
            kind=EventKind.EMERGENCY_STOP,
            safety_critical=True,
            explanation_text="Emergency stop: an obstacle appeared directly in our path.",
            actions=(
                SpawnActor(kind=ActorKind.PEDESTRIAN,
                           path=((450.0, 400.0), (470.0, 400.0)), speed=1.0),
                EmergencyStop(),
                SetTargetSpeed(speed=0.0),
            ),
        ),
    )


def _ambient_actors() -> tuple[TrafficActor, ...]:
    return (
        TrafficActor.spawn(id=1, kind=ActorKind.CAR,
                           path=((30.0, -4.0), (700.0, -4.0)), speed=8.0),
        TrafficActor.spawn(id=2, kind=ActorKind.CAR,
                           path=((120.0, 4.0), (400.0, 4.0), (430.0, 20.0)), speed=6.0),
    )


def bundled_scenario(name: str) -> ScenarioScript:
    """Template script by name ('nelo', 'coda', or 'lumo')."""
    if name not in _POLICIES:
        raise KeyError(f"unknown template {name!r}; choose from {TEMPLATE_NAMES}")
    script = ScenarioScript(
        id=name,
        route=_course(),
        target_speed=12.0,
        policy=_POLICIES[name],
        events=_events(),
        actors=_ambient_actors(),
    )
    validate_script(script)
    return script
