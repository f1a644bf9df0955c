import math

import pytest

from cabinsim.sim import (
    DEFAULT_PARAMS,
    ControlInput,
    Gear,
    SimParams,
    VehicleState,
    compute_force_feedback,
    ego_step,
    wrap_angle,
)

NO_DRAG = SimParams(c_drag=0.0)


def test_straight_line_coasting():
    # v=10, no pedals, no drag, dt=0.1 -> moves 1 m along +x, speed unchanged
    s0 = VehicleState(speed=10.0)
    s1 = ego_step(s0, ControlInput(), 0.1, NO_DRAG)
    assert s1.x == pytest.approx(1.0)
    assert s1.y == 0.0
    assert s1.heading == 0.0
    assert s1.speed == 10.0


def test_heading_increment_matches_update_equation():
    # independent evaluation of (v/L)*tan(delta)*dt for v=10, delta=0.1, L=2.8, dt=0.01
    s0 = VehicleState(speed=10.0)
    u = ControlInput(steering_norm=0.1 / DEFAULT_PARAMS.max_steer)
    s1 = ego_step(s0, u, 0.01, NO_DRAG)
    assert s1.heading == pytest.approx(0.003583381145908948, rel=1e-12)


def test_constant_steering_traces_circle():
    # radius L/tan(delta) = 2.8/tan(0.1) ~ 27.9066 m; Euler at dt=1/60 stays within
    # 1% of circumference of the analytic circle (center at (0, R) for this start pose)
    dt = 1.0 / 60.0
    delta = 0.1
    v = 10.0
    radius = DEFAULT_PARAMS.wheelbase / math.tan(delta)
    circumference = 2.0 * math.pi * radius
    turn_rate = (v / DEFAULT_PARAMS.wheelbase) * math.tan(delta)
    n = round((2.0 * math.pi / turn_rate) / dt)

    state = VehicleState(speed=v)
    u = ControlInput(steering_norm=delta / DEFAULT_PARAMS.max_steer)
    worst = 0.0
    for _ in range(n):
        state = ego_step(state, u, dt, NO_DRAG)
        dev = abs(math.hypot(state.x, state.y - radius) - radius)
        worst = max(worst, dev)
    assert worst <= 0.01 * circumference


def test_circle_against_fine_step_reference():
    # same maneuver over 60 s: coarse endpoint within 0.5 m of a dt=1e-5 reference
    delta, v, L = 0.1, 10.0, DEFAULT_PARAMS.wheelbase
    u = ControlInput(steering_norm=delta / DEFAULT_PARAMS.max_steer)

    state = VehicleState(speed=v)
    for _ in range(60 * 60):
        state = ego_step(state, u, 1.0 / 60.0, NO_DRAG)

    # reference integrator, deliberately separate from ego_step
    x = y = psi = 0.0
    dt_ref = 1e-5
    for _ in range(round(60.0 / dt_ref)):
        x += v * math.cos(psi) * dt_ref
        y += v * math.sin(psi) * dt_ref
        psi += (v / L) * math.tan(delta) * dt_ref
    assert math.hypot(state.x - x, state.y - y) <= 0.5


def test_throttle_brake_drag_accounting():
    p = SimParams()
    s0 = VehicleState(speed=10.0)
    s1 = ego_step(s0, ControlInput(throttle=0.5, brake=0.25), 0.1, p)
    expect = 10.0 + (0.5 * p.a_max - 0.25 * p.b_max - p.c_drag * 10.0) * 0.1
    assert s1.speed == pytest.approx(expect)


def test_speed_never_negative_and_capped():
    s = VehicleState(speed=0.2)
    s = ego_step(s, ControlInput(brake=1.0), 0.1, NO_DRAG)
    assert s.speed == 0.0
    fast = VehicleState(speed=DEFAULT_PARAMS.v_max)
    fast = ego_step(fast, ControlInput(throttle=1.0), 0.1, NO_DRAG)
    assert fast.speed == DEFAULT_PARAMS.v_max


def test_park_pins_position_and_speed():
    s0 = VehicleState(x=3.0, y=4.0, speed=5.0, gear=Gear.PARK)
    s1 = ego_step(s0, ControlInput(throttle=1.0, steering_norm=0.5), 1.0, NO_DRAG)
    assert (s1.x, s1.y) == (3.0, 4.0)
    assert s1.speed == 0.0


def test_reverse_moves_backwards():
    s0 = VehicleState(speed=2.0, gear=Gear.REVERSE)
    s1 = ego_step(s0, ControlInput(), 0.5, NO_DRAG)
    assert s1.x == pytest.approx(-1.0)


def test_heading_stays_normalized():
    s = VehicleState(speed=20.0)
    u = ControlInput(steering_norm=1.0)
    for _ in range(600):
        s = ego_step(s, u, 1.0 / 60.0, NO_DRAG)
        assert -math.pi < s.heading <= math.pi


def test_input_clamping():
    u = ControlInput.clamped(steering_norm=-3.0, throttle=7.0, brake=-1.0)
    assert (u.steering_norm, u.throttle, u.brake) == (-1.0, 1.0, 0.0)


def test_wrap_angle_bounds():
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(3.0 * math.pi) == pytest.approx(math.pi)
    assert wrap_angle(0.1 - 4.0 * math.pi) == pytest.approx(0.1)


class TestForceFeedback:
    def test_centered_wheel_is_silent(self):
        assert compute_force_feedback(VehicleState(speed=10.0), 0.0) == 0.0

    def test_direct_evaluation(self):
        # -(4.0*0.2 + 0.5*0)*min(10/5, 1) = -0.8
        s = VehicleState(speed=10.0, steering_angle=0.2)
        assert compute_force_feedback(s, 0.0) == pytest.approx(-0.8)

    def test_saturates_at_torque_cap(self):
        s = VehicleState(speed=10.0, steering_angle=2.0)
        assert compute_force_feedback(s, 0.0) == -3.0

    def test_odd_in_steering_angle(self):
        for delta in (0.05, 0.2, 0.45, 0.6):
            pos = compute_force_feedback(VehicleState(speed=8.0, steering_angle=delta), 0.0)
            neg = compute_force_feedback(VehicleState(speed=8.0, steering_angle=-delta), 0.0)
            assert pos == pytest.approx(-neg)
            assert abs(pos) <= DEFAULT_PARAMS.ff_torque_max

    def test_fades_at_low_speed(self):
        slow = compute_force_feedback(VehicleState(speed=2.5, steering_angle=0.2), 0.0)
        assert slow == pytest.approx(-0.4)
