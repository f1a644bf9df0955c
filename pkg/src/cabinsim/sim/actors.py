"""Traffic actors that follow fixed waypoint paths at commanded speed."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

Waypoint = tuple[float, float]
Pose = tuple[float, float, float]  # x, y, heading


class ActorKind(str, Enum):
    CAR = "car"
    PEDESTRIAN = "pedestrian"


@dataclass(frozen=True)
class TrafficActor:
    id: int
    kind: ActorKind
    path: tuple[Waypoint, ...]
    speed: float                    # commanded along-path speed [m/s]
    pose: Pose
    active: bool = True
    progress: float = 0.0           # arc length travelled along path [m]

    @classmethod
    def spawn(cls, id: int, kind: ActorKind, path: tuple[Waypoint, ...],
              speed: float) -> "TrafficActor":
        """Create an actor parked at the start of its path, facing along it."""
        return cls(id=id, kind=kind, path=tuple(tuple(p) for p in path),
                   speed=speed, pose=point_along_path(path, 0.0))


def path_length(path: tuple[Waypoint, ...]) -> float:
    return sum(math.dist(a, b) for a, b in zip(path, path[1:]))


def point_along_path(path: tuple[Waypoint, ...], s: float) -> Pose:
    """Pose at arc length s, clamped to the path ends; heading follows the segment."""
    if s <= 0.0:
        (x0, y0), (x1, y1) = path[0], path[1]
        return (x0, y0, math.atan2(y1 - y0, x1 - x0))
    remaining = s
    heading = 0.0
    for i in range(len(path) - 1):
        (x0, y0), (x1, y1) = path[i], path[i + 1]
        seg = math.dist((x0, y0), (x1, y1))
        if seg == 0.0:
            continue
        heading = math.atan2(y1 - y0, x1 - x0)
        if remaining <= seg:
            f = remaining / seg
            return (x0 + f * (x1 - x0), y0 + f * (y1 - y0), heading)
        remaining -= seg
    x, y = path[-1]
    return (x, y, heading)


def actor_step(actor: TrafficActor, dt: float) -> TrafficActor:
    """Advance an actor along its path by speed*dt; deactivate at the final waypoint."""
    if not actor.active:
        return actor
    total = path_length(actor.path)
    s = actor.progress + actor.speed * dt
    if s >= total:
        x, y, heading = point_along_path(actor.path, total)
        return replace(actor, pose=(x, y, heading), progress=total, active=False)
    return replace(actor, pose=point_along_path(actor.path, s), progress=s)
