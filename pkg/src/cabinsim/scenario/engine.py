"""Trigger evaluation, event application, and explanation-agent policies.

The pure functions here are orchestrated by ScenarioEngine, a single-owner
session object that guarantees each event fires exactly once and each fired
event is explained at most once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..sim import TrafficActor, WorldState
from .script import (
    AgentPolicy,
    EmergencyStop,
    PolicyVariant,
    ScenarioEvent,
    ScenarioScript,
    SetTargetSpeed,
    SpawnActor,
    TimeTrigger,
)

MODALITY = "text_and_speech"


@dataclass(frozen=True)
class ExplanationEvent:
    event_id: str
    t_issued: float
    text: str
    trigger_source: str        # "proactive" | "user_request"
    modality: str = MODALITY


@dataclass(frozen=True)
class EventEffects:
    """Session-level consequences of an event that live outside WorldState."""
    target_speed: float | None = None
    emergency_stop: bool = False


def _trigger_holds(trigger, world: WorldState) -> bool:
    if isinstance(trigger, TimeTrigger):
        return world.time >= trigger.at_time
    return math.hypot(world.ego.x - trigger.x, world.ego.y - trigger.y) <= trigger.radius


def eval_triggers(world: WorldState, script: ScenarioScript,
                  fired: set[str]) -> list[ScenarioEvent]:
    """Events whose condition holds and that have not fired yet, ordered by id."""
    due = [ev for ev in script.events
           if ev.id not in fired and _trigger_holds(ev.trigger, world)]
    due.sort(key=lambda ev: ev.id)
    return due


def apply_event(world: WorldState, event: ScenarioEvent) -> tuple[WorldState, EventEffects]:
    """Apply all event actions in listed order.

    Spawned actors get fresh ids above every existing one; target-speed and
    emergency-stop changes are returned as EventEffects since they act on the
    driving agent, not on the world snapshot.
    """
    actors = list(world.actors)
    next_id = max((a.id for a in actors), default=0) + 1
    effects = EventEffects()
    for action in event.actions:
        if isinstance(action, SpawnActor):
            actors.append(TrafficActor.spawn(id=next_id, kind=action.kind,
                                             path=action.path, speed=action.speed))
            next_id += 1
        elif isinstance(action, SetTargetSpeed):
            effects = replace(effects, target_speed=action.speed)
        elif isinstance(action, EmergencyStop):
            effects = replace(effects, emergency_stop=True)
    return replace(world, actors=tuple(actors)), effects


def explanation_policy(event: ScenarioEvent, t_event: float, policy: AgentPolicy,
                       pending_request: float | None, now: float) -> ExplanationEvent | None:
    """Decide whether (and how) a fired event is explained under the given policy.

    no_explanations never explains. proactive explains immediately at event
    time. on_demand explains only when a request timestamp falls inside
    [t_event, t_event + request_window_s].
    """
    if policy.variant is PolicyVariant.NO_EXPLANATIONS:
        return None
    if policy.variant is PolicyVariant.PROACTIVE:
        return ExplanationEvent(event_id=event.id, t_issued=t_event,
                                text=event.explanation_text, trigger_source="proactive")
    if pending_request is None:
        return None
    if t_event <= pending_request <= t_event + policy.request_window_s:
        return ExplanationEvent(event_id=event.id, t_issued=pending_request,
                                text=event.explanation_text, trigger_source="user_request")
    return None


class ScenarioEngine:
    """Tracks fired events and issued explanations for one session."""

    def __init__(self, script: ScenarioScript):
        self.script = script
        self.fired: dict[str, float] = {}       # event id -> fire time
        self.explained: set[str] = set()
        self.dropped_requests: list[float] = []

    def step_events(self, world: WorldState) -> tuple[WorldState, list[ScenarioEvent],
                                                      list[ExplanationEvent], EventEffects]:
        """Fire due events against the world; proactive policies explain here."""
        merged = EventEffects()
        explanations = []
        due = eval_triggers(world, self.script, set(self.fired))
        for ev in due:
            self.fired[ev.id] = world.time
            world, effects = apply_event(world, ev)
            if effects.target_speed is not None:
                merged = replace(merged, target_speed=effects.target_speed)
            if effects.emergency_stop:
                merged = replace(merged, emergency_stop=True)
            if ev.safety_critical and ev.id not in self.explained:
                expl = explanation_policy(ev, world.time, self.script.policy, None, world.time)
                if expl is not None:
                    self.explained.add(ev.id)
                    explanations.append(expl)
        return world, due, explanations, merged

    def handle_request(self, now: float) -> ExplanationEvent | None:
        """Match an on-demand request to the most recent eligible fired event.

        Requests with no event in window are dropped (and remembered, so the
        session can log a marker for them).
        """
        if self.script.policy.variant is not PolicyVariant.ON_DEMAND:
            self.dropped_requests.append(now)
            return None
        candidates = []
        for ev in self.script.events:
            if not ev.safety_critical or ev.id in self.explained or ev.id not in self.fired:
                continue
            expl = explanation_policy(ev, self.fired[ev.id], self.script.policy, now, now)
            if expl is not None:
                candidates.append((self.fired[ev.id], expl))
        if not candidates:
            self.dropped_requests.append(now)
            return None
        # latest fired event wins; simultaneous fires resolve by ascending id
        candidates.sort(key=lambda c: (-c[0], c[1].event_id))
        expl = candidates[0][1]
        self.explained.add(expl.event_id)
        return expl

    @property
    def all_fired(self) -> bool:
        return len(self.fired) == len(self.script.events)
