"""One driving session: owns the world, the scenario engine, and the log.

Single-owner contract: every method here is called from exactly one thread
of control (the simulation loop). Connection handlers never touch the
session directly; they enqueue frames that the loop drains and feeds in
through the offer_* methods before advancing the world. Each offer records
its frame to telemetry before letting it affect anything (write-ahead).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from ..scenario import ExplanationEvent, ScenarioEngine, ScenarioScript
from ..sim import (
    DEFAULT_DT,
    DEFAULT_PARAMS,
    ControlInput,
    Gear,
    RouteExhausted,
    SimParams,
    VehicleState,
    WorldState,
    autopilot,
    compute_force_feedback,
    step,
)
from ..telemetry import (
    EventMarker,
    ExplanationRecord,
    GazeSample,
    InputFrame,
    SessionEnd,
    SyntheticGaze,
    SynthGazeConfig,
    TouchSample,
    VehicleSample,
    open_session,
)

EXPLANATION_TTL = 8.0   # how long an explanation stays on the cockpit [s]
DEFAULT_TRACK = "Sunrise Drive"


@dataclass
class SessionConfig:
    seed: int = 0
    dt: float = DEFAULT_DT
    autopilot: bool = True
    duration_s: float | None = 120.0
    params: SimParams = DEFAULT_PARAMS
    gaze_mode: str = "live"                   # live | synthetic | replay
    gaze_config: SynthGazeConfig | None = None
    gaze_replay: list[GazeSample] = field(default_factory=list)
    input_trace: list[ControlInput] | None = None   # verbatim per-tick replay


@dataclass(frozen=True)
class TickOutput:
    torque: float                              # steering feedback [N*m]
    fired_events: tuple = ()
    explanations: tuple[ExplanationEvent, ...] = ()
    ended: bool = False
    end_reason: str = ""


class SimSession:
    def __init__(self, script: ScenarioScript, log_dir, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self.script = script
        self.engine = ScenarioEngine(script)
        self.writer = open_session(log_dir, {"seed": self.config.seed,
                                             "scenario_id": script.id})
        (x0, y0), (x1, y1) = script.route[0], script.route[1]
        ego = VehicleState(x=x0, y=y0, heading=math.atan2(y1 - y0, x1 - x0),
                           speed=0.0, gear=Gear.DRIVE)
        self.world = WorldState(ego=ego, actors=script.actors,
                                seed=self.config.seed, dt=self.config.dt)
        self.target_speed = script.target_speed
        self.estop_active = False
        self._held_input: ControlInput | None = None
        self.last_applied_input = ControlInput()
        self.music = {"track": DEFAULT_TRACK, "playing": False, "volume": 0.5}
        self._active_explanation: tuple[float, ExplanationEvent] | None = None
        self._last_request_tick = -1
        self.ended = False
        self.end_reason = ""
        self.outbound: list[tuple[str, dict]] = []   # (message type, payload)

        if self.config.gaze_mode == "synthetic":
            self._synth = SyntheticGaze(self.config.gaze_config
                                        or SynthGazeConfig(seed=self.config.seed))
        else:
            self._synth = None
        self._replay_gaze = sorted(self.config.gaze_replay, key=lambda g: g.t)
        self._replay_idx = 0

    # ------------------------------------------------------------- inbound

    @property
    def now(self) -> float:
        return self.world.time

    def latest_input(self) -> ControlInput:
        """Sample-and-hold: newest received input, or neutral if none ever arrived."""
        return self._held_input if self._held_input is not None else ControlInput()

    def offer_control_input(self, payload: dict) -> None:
        self.writer.record(InputFrame(t=self.now, channel="control_input", payload=payload))
        self._held_input = ControlInput.clamped(
            steering_norm=payload.get("steering_norm", 0.0),
            throttle=payload.get("throttle", 0.0),
            brake=payload.get("brake", 0.0),
            t_mono=payload.get("t_mono", self.now),
        )

    def offer_touch(self, payload: dict) -> None:
        target = str(payload.get("target_id", "background"))
        sample = TouchSample(
            t=self.now,
            x_norm=min(max(float(payload.get("x_norm", 0.0)), 0.0), 1.0),
            y_norm=min(max(float(payload.get("y_norm", 0.0)), 0.0), 1.0),
            target_id=target,
            action=str(payload.get("action", "tap")),
        )
        self.writer.record(sample)
        if target == "explain_button":
            self._handle_request()
        elif target == "volume_slider":
            self.music["volume"] = min(max(float(payload.get("value", 0.5)), 0.0), 1.0)
        elif target == "music_play_pause":
            self.music["playing"] = not self.music["playing"]

    def offer_gaze(self, payload: dict) -> None:
        try:
            sample = GazeSample(
                t=self.now,
                origin=tuple(float(c) for c in payload.get("origin", (0.0, 0.0, 0.0))),
                direction=tuple(float(c) for c in payload.get("direction", (1.0, 0.0, 0.0))),
                pupil_l=float(payload.get("pupil_l", 0.0)),
                pupil_r=float(payload.get("pupil_r", 0.0)),
                valid_l=bool(payload.get("valid_l", True)),
                valid_r=bool(payload.get("valid_r", True)),
            )
        except (TypeError, ValueError):
            return  # unusable gaze payload; drop silently
        self.writer.record(sample)

    def offer_request(self, payload: dict) -> None:
        self.writer.record(InputFrame(t=self.now, channel="request_explanation",
                                      payload=payload))
        self._handle_request()

    def _handle_request(self) -> None:
        # explain touch + request_explanation frame arrive together; one per tick
        if self._last_request_tick == self.world.tick:
            return
        self._last_request_tick = self.world.tick
        expl = self.engine.handle_request(self.now)
        if expl is None:
            self.writer.record(InputFrame(t=self.now, channel="request_dropped",
                                          payload={"t_request": self.now}, applied=False))
            return
        self._issue_explanation(expl)

    # ------------------------------------------------------------- outbound

    def _issue_explanation(self, expl: ExplanationEvent) -> None:
        self.writer.record(ExplanationRecord(
            t=self.now, event_id=expl.event_id, text=expl.text, modality=expl.modality,
            trigger_source=expl.trigger_source, agent_name=self.script.policy.agent_name))
        self._active_explanation = (self.now, expl)
        self.outbound.append(("explanation", {
            "event_id": expl.event_id,
            "text": expl.text,
            "agent_name": self.script.policy.agent_name,
            "trigger_source": expl.trigger_source,
            "modality": expl.modality,
        }))

    def ui_state(self) -> dict:
        """Cockpit snapshot of the current tick; speed is never interpolated."""
        ego = self.world.ego
        active = None
        if self._active_explanation is not None:
            t_issued, expl = self._active_explanation
            if self.now - t_issued <= EXPLANATION_TTL:
                active = {"text": expl.text, "agent_name": self.script.policy.agent_name}
        return {
            "tick": self.world.tick,
            "t": self.world.time,
            "speed": ego.speed,
            "gear": ego.gear.value,
            "steering_norm": ego.steering_angle / self.config.params.max_steer,
            "throttle": self.last_applied_input.throttle,
            "brake": self.last_applied_input.brake,
            "ego": {"x": ego.x, "y": ego.y, "heading": ego.heading},
            "detected": [
                {"actor_id": d.actor_id, "contour": [list(v) for v in d.contour],
                 "range": d.range}
                for d in self.world.detected
            ],
            "actors": [
                {"id": a.id, "kind": a.kind.value, "x": a.pose[0], "y": a.pose[1],
                 "heading": a.pose[2], "active": a.active}
                for a in self.world.actors
            ],
            "explanation": active,
            "music": dict(self.music),
        }

    # ----------------------------------------------------------------- tick

    def _control_for_tick(self) -> ControlInput | None:
        cfg = self.config
        if cfg.input_trace is not None:
            idx = self.world.tick
            return cfg.input_trace[idx] if idx < len(cfg.input_trace) else ControlInput()
        if cfg.autopilot:
            try:
                return autopilot(self.world, self.script.route, self.target_speed,
                                 cfg.params, emergency_stop=self.estop_active)
            except RouteExhausted:
                self._end("route_exhausted")
                return None
        u = self.latest_input()
        if self.estop_active:
            u = replace(u, throttle=0.0, brake=1.0)
        return u

    def _emit_due_gaze(self) -> None:
        now = self.now
        if self._synth is not None:
            responses = [(t, self._synth.config.response_amplitude)
                         for t in self.engine.fired.values()]
            while self._synth.next_t <= now:
                self.writer.record(self._synth.next_sample(responses))
        while (self._replay_idx < len(self._replay_gaze)
               and self._replay_gaze[self._replay_idx].t <= now):
            self.writer.record(self._replay_gaze[self._replay_idx])
            self._replay_idx += 1

    def _end(self, reason: str) -> None:
        if self.ended:
            return
        self.ended = True
        self.end_reason = reason
        self.writer.record(SessionEnd(t=self.now, reason=reason))
        self.writer.close()
        self.outbound.append(("session_end", {"reason": reason}))

    def tick(self) -> TickOutput:
        """Advance one fixed timestep: fire events, apply control, step, log."""
        if self.ended:
            return TickOutput(torque=0.0, ended=True, end_reason=self.end_reason)

        world, due, explanations, effects = self.engine.step_events(self.world)
        self.world = world
        if effects.target_speed is not None:
            self.target_speed = effects.target_speed
        if effects.emergency_stop:
            self.estop_active = True
        for ev in due:
            issued_now = any(x.event_id == ev.id for x in explanations)
            self.writer.record(EventMarker(
                t=self.now, event_id=ev.id, kind=ev.kind.value,
                safety_critical=ev.safety_critical, explanation_issued=issued_now))
            self.outbound.append(("scenario_event", {
                "event_id": ev.id, "kind": ev.kind.value,
                "safety_critical": ev.safety_critical, "t": self.now,
            }))
        for expl in explanations:
            self._issue_explanation(expl)

        u = self._control_for_tick()
        if u is None:  # route exhausted during control selection
            return TickOutput(torque=0.0, fired_events=tuple(due),
                              explanations=tuple(explanations),
                              ended=True, end_reason=self.end_reason)

        prev_delta = self.world.ego.steering_angle
        self.world = step(self.world, u, self.config.dt, self.config.params)
        self.last_applied_input = u
        # gaze sampled inside the step interval goes first to keep t non-decreasing
        self._emit_due_gaze()
        self.writer.record(VehicleSample(t=self.now, tick=self.world.tick,
                                         state=self.world.ego, input=u))
        steering_rate = (self.world.ego.steering_angle - prev_delta) / self.config.dt
        torque = compute_force_feedback(self.world.ego, steering_rate, self.config.params)

        if self.estop_active and self.world.ego.speed == 0.0:
            self.estop_active = False

        if (self.config.duration_s is not None
                and self.now >= self.config.duration_s):
            self._end("duration")

        return TickOutput(torque=torque, fired_events=tuple(due),
                          explanations=tuple(explanations),
                          ended=self.ended, end_reason=self.end_reason)

    def drain_outbound(self) -> list[tuple[str, dict]]:
        out = self.outbound
        self.outbound = []
        return out

    def close(self, reason: str = "shutdown") -> None:
        self._end(reason)
