"""Tunable constants for the fixed-timestep world simulation."""

from __future__ import annotations

from dataclasses import dataclass

# Fixed simulation timestep [s]. World time is always derived as tick * dt,
# never accumulated, so trigger times replay exactly.
DEFAULT_DT = 1.0 / 60.0


@dataclass(frozen=True)
class SimParams:
    # kinematic bicycle
    wheelbase: float = 2.8          # front-to-rear axle distance [m]
    max_steer: float = 0.6          # front wheel angle limit [rad]
    a_max: float = 3.0              # full-throttle acceleration [m/s^2]
    b_max: float = 8.0              # full-brake deceleration [m/s^2]
    v_max: float = 50.0             # speed cap [m/s]
    c_drag: float = 0.05            # linear drag coefficient [1/s]

    # object detection
    detection_range: float = 50.0   # center-to-center cutoff [m]
    car_length: float = 4.5         # detection rectangle [m]
    car_width: float = 1.8
    pedestrian_length: float = 0.6
    pedestrian_width: float = 0.6

    # self-centering steering torque
    ff_center_gain: float = 4.0     # [N*m/rad]
    ff_damp_gain: float = 0.5       # [N*m*s/rad]
    ff_speed_ref: float = 5.0       # torque fades below this speed [m/s]
    ff_torque_max: float = 3.0      # output clamp [N*m]

    # speed controller used by the waypoint follower
    speed_gain: float = 0.5         # pedal per m/s of speed error


DEFAULT_PARAMS = SimParams()
