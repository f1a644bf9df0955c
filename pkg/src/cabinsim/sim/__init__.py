from .params import DEFAULT_DT, SimParams, DEFAULT_PARAMS
from .vehicle import Gear, VehicleState, ControlInput, ego_step, compute_force_feedback, wrap_angle
from .actors import ActorKind, TrafficActor, Waypoint, actor_step, path_length, point_along_path
from .detection import DetectedObject, detect_objects
from .autopilot import RouteExhausted, autopilot
from .world import WorldState, step

__all__ = [
    "DEFAULT_DT",
    "SimParams",
    "DEFAULT_PARAMS",
    "Gear",
    "VehicleState",
    "ControlInput",
    "ego_step",
    "compute_force_feedback",
    "wrap_angle",
    "ActorKind",
    "TrafficActor",
    "Waypoint",
    "actor_step",
    "path_length",
    "point_along_path",
    "DetectedObject",
    "detect_objects",
    "RouteExhausted",
    "autopilot",
    "WorldState",
    "step",
]
