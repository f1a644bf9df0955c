"""Seeded synthetic gaze/pupil stream standing in for a live eye tracker.

Pupil diameter rides a baseline plus one raised-cosine response bump per
scenario event (peak = response_amplitude, onset delayed by response_latency)
with Gaussian measurement noise on each eye. A fixed fraction of samples is
marked invalid to emulate blinks so downstream cleaning has something to do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .records import EventMarker, GazeSample

BLINK_PROB = 0.02
PUPIL_MIN = 0.01   # [mm] clip bound keeping valid samples in range
PUPIL_MAX = 10.0


@dataclass(frozen=True)
class SynthGazeConfig:
    baseline: float = 3.0             # resting diameter [mm]
    noise_sigma: float = 0.05         # per-eye Gaussian sigma [mm]
    response_amplitude: float = 0.4   # bump peak [mm]
    response_latency: float = 0.5     # event-to-onset delay [s]
    response_duration: float = 6.0    # bump support length [s]
    sample_rate: float = 100.0        # [Hz]
    seed: int = 0


def response_bump(u: float, duration: float) -> float:
    """Raised cosine on [0, duration], peak 1 at the midpoint, 0 outside."""
    if u < 0.0 or u > duration:
        return 0.0
    return 0.5 * (1.0 - math.cos(2.0 * math.pi * u / duration))


def _direction(t: float) -> tuple[float, float, float]:
    # gentle deterministic scan pattern; unit norm by construction
    yaw = 0.15 * math.sin(2.0 * math.pi * 0.11 * t)
    pitch = 0.10 * math.sin(2.0 * math.pi * 0.07 * t + 0.9)
    return (math.cos(pitch) * math.cos(yaw),
            math.cos(pitch) * math.sin(yaw),
            math.sin(pitch))


class SyntheticGaze:
    """Incremental generator; one rng draw pattern per sample keeps runs identical."""

    def __init__(self, config: SynthGazeConfig):
        self.config = config
        self._rng = np.random.default_rng(config.seed)
        self._index = 0

    @property
    def next_t(self) -> float:
        return self._index / self.config.sample_rate

    def next_sample(self, responses: Sequence[tuple[float, float]]) -> GazeSample:
        """Emit the next sample; responses is (event_time, amplitude) pairs so far."""
        cfg = self.config
        t = self.next_t
        self._index += 1

        blink = self._rng.random() < BLINK_PROB
        noise_l = self._rng.normal() * cfg.noise_sigma
        noise_r = self._rng.normal() * cfg.noise_sigma

        base = cfg.baseline
        for t_event, amplitude in responses:
            base += amplitude * response_bump(t - t_event - cfg.response_latency,
                                              cfg.response_duration)
        if blink:
            return GazeSample(t=t, origin=(0.0, 0.0, 0.0), direction=_direction(t),
                              pupil_l=0.0, pupil_r=0.0, valid_l=False, valid_r=False)
        pl = min(max(base + noise_l, PUPIL_MIN), PUPIL_MAX)
        pr = min(max(base + noise_r, PUPIL_MIN), PUPIL_MAX)
        return GazeSample(t=t, origin=(0.0, 0.0, 0.0), direction=_direction(t),
                          pupil_l=pl, pupil_r=pr, valid_l=True, valid_r=True)


def synth_gaze(config: SynthGazeConfig, events: Iterable[EventMarker], duration: float,
               amplitudes: Sequence[float] | None = None) -> list[GazeSample]:
    """Generate the full sample list for a session of the given duration.

    amplitudes, when given, overrides config.response_amplitude per event
    (matched by position) so events can carry distinct response strengths.
    """
    events = list(events)
    if amplitudes is None:
        responses = [(e.t, config.response_amplitude) for e in events]
    else:
        responses = [(e.t, a) for e, a in zip(events, amplitudes)]
    gen = SyntheticGaze(config)
    n = int(round(duration * config.sample_rate))
    return [gen.next_sample(responses) for _ in range(n)]
