"""Complete world snapshot and the single fixed-timestep update."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .actors import TrafficActor, actor_step
from .detection import DetectedObject, detect_objects
from .params import DEFAULT_DT, DEFAULT_PARAMS, SimParams
from .vehicle import ControlInput, VehicleState, ego_step


@dataclass(frozen=True)
class WorldState:
    tick: int = 0
    ego: VehicleState = VehicleState()
    actors: tuple[TrafficActor, ...] = ()
    detected: tuple[DetectedObject, ...] = ()
    seed: int = 0
    dt: float = DEFAULT_DT

    @property
    def time(self) -> float:
        # derived, never accumulated: identical ticks always mean identical times
        return self.tick * self.dt


def step(world: WorldState, u: ControlInput, dt: float,
         params: SimParams = DEFAULT_PARAMS) -> WorldState:
    """Advance the whole world one tick. Pure: same (world, u) gives the same result."""
    ego = ego_step(world.ego, u, dt, params)
    actors = tuple(actor_step(a, dt) if a.active else a for a in world.actors)
    advanced = replace(world, tick=world.tick + 1, ego=ego, actors=actors)
    detected = detect_objects(advanced, params.detection_range, params)
    return replace(advanced, detected=detected)
