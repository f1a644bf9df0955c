"""Ego vehicle state, control inputs, and the kinematic bicycle update."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .params import DEFAULT_PARAMS, SimParams


class Gear(str, Enum):
    PARK = "park"
    DRIVE = "drive"
    REVERSE = "reverse"


def wrap_angle(a: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


def clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


@dataclass(frozen=True)
class VehicleState:
    x: float = 0.0                  # east [m]
    y: float = 0.0                  # north [m]
    heading: float = 0.0            # yaw, CCW from +x, in (-pi, pi]
    speed: float = 0.0              # longitudinal, >= 0 [m/s]
    steering_angle: float = 0.0     # front wheel angle [rad]
    gear: Gear = Gear.DRIVE


@dataclass(frozen=True)
class ControlInput:
    steering_norm: float = 0.0      # [-1, 1]
    throttle: float = 0.0           # [0, 1]
    brake: float = 0.0              # [0, 1]
    t_mono: float = 0.0             # sender monotonic time [s]

    @classmethod
    def clamped(cls, steering_norm: float, throttle: float, brake: float,
                t_mono: float = 0.0) -> "ControlInput":
        """Build an input with all ranges enforced; out-of-range values clamp, never reject."""
        return cls(
            steering_norm=clamp(float(steering_norm), -1.0, 1.0),
            throttle=clamp(float(throttle), 0.0, 1.0),
            brake=clamp(float(brake), 0.0, 1.0),
            t_mono=float(t_mono),
        )


NEUTRAL_INPUT = ControlInput()


def ego_step(state: VehicleState, u: ControlInput, dt: float,
             params: SimParams = DEFAULT_PARAMS) -> VehicleState:
    """Advance the ego vehicle one explicit-Euler step of the kinematic bicycle.

    Position and heading integrate the pre-update speed; gear gates the sign
    of motion (PARK pins speed to zero, REVERSE drives backwards).
    """
    delta = u.steering_norm * params.max_steer
    if state.gear is Gear.PARK:
        return replace(state, speed=0.0, steering_angle=delta)

    accel = u.throttle * params.a_max - u.brake * params.b_max - params.c_drag * state.speed
    new_speed = clamp(state.speed + accel * dt, 0.0, params.v_max)

    v = -state.speed if state.gear is Gear.REVERSE else state.speed
    x = state.x + v * math.cos(state.heading) * dt
    y = state.y + v * math.sin(state.heading) * dt
    heading = wrap_angle(state.heading + (v / params.wheelbase) * math.tan(delta) * dt)
    return VehicleState(x=x, y=y, heading=heading, speed=new_speed,
                        steering_angle=delta, gear=state.gear)


def compute_force_feedback(state: VehicleState, steering_rate: float,
                           params: SimParams = DEFAULT_PARAMS) -> float:
    """Self-centering steering torque [N*m] opposing wheel angle and rate.

    Torque scales down linearly below ff_speed_ref and saturates at
    +/- ff_torque_max.
    """
    speed_factor = min(state.speed / params.ff_speed_ref, 1.0)
    raw = -(params.ff_center_gain * state.steering_angle
            + params.ff_damp_gain * steering_rate) * speed_factor
    return clamp(raw, -params.ff_torque_max, params.ff_torque_max)
