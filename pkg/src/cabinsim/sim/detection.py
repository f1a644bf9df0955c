"""Surround object detection: oriented bounding rectangles within range of the ego."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .actors import ActorKind, TrafficActor
from .params import DEFAULT_PARAMS, SimParams

if TYPE_CHECKING:
    from .world import WorldState


@dataclass(frozen=True)
class DetectedObject:
    actor_id: int
    contour: tuple[tuple[float, float], ...]  # 4 vertices, world frame [m]
    range: float                              # center distance from ego [m]


def _footprint(kind: ActorKind, params: SimParams) -> tuple[float, float]:
    if kind is ActorKind.CAR:
        return params.car_length, params.car_width
    return params.pedestrian_length, params.pedestrian_width


def bounding_rectangle(actor: TrafficActor,
                       params: SimParams = DEFAULT_PARAMS) -> tuple[tuple[float, float], ...]:
    """4-vertex rectangle centered on the actor, length axis along its heading."""
    cx, cy, heading = actor.pose
    length, width = _footprint(actor.kind, params)
    hl, hw = length / 2.0, width / 2.0
    c, s = math.cos(heading), math.sin(heading)
    corners = ((hl, hw), (hl, -hw), (-hl, -hw), (-hl, hw))
    return tuple((cx + c * lx - s * ly, cy + s * lx + c * ly) for lx, ly in corners)


def detect_objects(world: "WorldState", detection_range: float,
                   params: SimParams = DEFAULT_PARAMS) -> tuple[DetectedObject, ...]:
    """Active actors within detection_range of the ego, nearest first, ties by id."""
    ex, ey = world.ego.x, world.ego.y
    hits = []
    for actor in world.actors:
        if not actor.active:
            continue
        r = math.hypot(actor.pose[0] - ex, actor.pose[1] - ey)
        if r <= detection_range:
            hits.append(DetectedObject(actor_id=actor.id,
                                       contour=bounding_rectangle(actor, params),
                                       range=r))
    hits.sort(key=lambda d: (d.range, d.actor_id))
    return tuple(hits)
