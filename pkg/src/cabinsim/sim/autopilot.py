"""Waypoint-following controller used for automated driving scenarios.

Lateral control is pure pursuit: chase a point a speed-scaled lookahead
distance further along the route. Longitudinal control is a proportional
speed hold. An emergency-stop override forces full braking.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from .actors import Waypoint, point_along_path
from .params import DEFAULT_PARAMS, SimParams
from .vehicle import ControlInput, clamp, wrap_angle

if TYPE_CHECKING:
    from .world import WorldState

MIN_LOOKAHEAD = 5.0      # [m]
LOOKAHEAD_GAIN = 1.5     # [s] of travel added to the lookahead


class RouteExhausted(Exception):
    """The ego has passed the final route waypoint; the scenario should end."""


def _project_onto_route(x: float, y: float, route: tuple[Waypoint, ...]) -> float:
    """Arc length of the closest point on the route polyline to (x, y)."""
    best_d2 = math.inf
    best_s = 0.0
    s_acc = 0.0
    for (x0, y0), (x1, y1) in zip(route, route[1:]):
        dx, dy = x1 - x0, y1 - y0
        seg2 = dx * dx + dy * dy
        if seg2 == 0.0:
            continue
        t = clamp(((x - x0) * dx + (y - y0) * dy) / seg2, 0.0, 1.0)
        px, py = x0 + t * dx, y0 + t * dy
        d2 = (x - px) ** 2 + (y - py) ** 2
        if d2 < best_d2:
            best_d2 = d2
            best_s = s_acc + t * math.sqrt(seg2)
        s_acc += math.sqrt(seg2)
    return best_s


def _past_route_end(x: float, y: float, route: tuple[Waypoint, ...]) -> bool:
    # beyond the plane through the final waypoint, normal to the last segment
    (x0, y0), (x1, y1) = route[-2], route[-1]
    ux, uy = x1 - x0, y1 - y0
    return (x - x1) * ux + (y - y1) * uy > 0.0


def autopilot(world: "WorldState", route: tuple[Waypoint, ...], target_speed: float,
              params: SimParams = DEFAULT_PARAMS,
              emergency_stop: bool = False) -> ControlInput:
    """Compute the control input steering the ego along route at target_speed.

    Raises RouteExhausted once the ego passes the final waypoint.
    """
    ego = world.ego
    if _past_route_end(ego.x, ego.y, route):
        raise RouteExhausted(f"ego at ({ego.x:.1f}, {ego.y:.1f}) passed route end")

    lookahead = max(MIN_LOOKAHEAD, LOOKAHEAD_GAIN * ego.speed)
    s_ego = _project_onto_route(ego.x, ego.y, route)
    gx, gy, _ = point_along_path(route, s_ego + lookahead)

    alpha = wrap_angle(math.atan2(gy - ego.y, gx - ego.x) - ego.heading)
    delta = math.atan(2.0 * params.wheelbase * math.sin(alpha) / lookahead)
    steering = clamp(delta / params.max_steer, -1.0, 1.0)

    err = target_speed - ego.speed
    throttle = clamp(params.speed_gain * err, 0.0, 1.0)
    brake = clamp(-params.speed_gain * err, 0.0, 1.0)
    if emergency_stop:
        throttle, brake = 0.0, 1.0

    return ControlInput(steering_norm=steering, throttle=throttle, brake=brake,
                        t_mono=world.time)
