import math
import statistics

import pytest

from cabinsim.telemetry import EventMarker, SynthGazeConfig, SyntheticGaze, synth_gaze
from cabinsim.telemetry.synth import response_bump


def marker(t, eid="e1"):
    return EventMarker(t=t, event_id=eid, kind="custom",
                       safety_critical=True, explanation_issued=False)


def test_degenerate_config_gives_flat_series():
    cfg = SynthGazeConfig(baseline=3.0, noise_sigma=0.0, response_amplitude=0.0, seed=1)
    samples = synth_gaze(cfg, [marker(5.0)], 15.0)
    assert len(samples) == 1500
    for s in samples:
        if s.valid_l:
            assert s.pupil_l == 3.0 and s.pupil_r == 3.0
        else:
            assert s.pupil_l == 0.0 and s.pupil_r == 0.0


def test_bump_peak_value_and_position():
    # noise off: max is exactly baseline + amplitude at t_event + latency + duration/2
    cfg = SynthGazeConfig(baseline=3.0, noise_sigma=0.0, response_amplitude=0.4,
                          response_latency=0.5, response_duration=2.0,
                          sample_rate=100.0, seed=0)
    samples = synth_gaze(cfg, [marker(10.0)], 20.0)
    peak = max((s for s in samples if s.valid_l), key=lambda s: s.pupil_l)
    assert peak.pupil_l == pytest.approx(3.4, abs=1e-12)
    assert peak.t == pytest.approx(11.5)


def test_window_mean_rises_by_half_amplitude():
    # mean over [t_event+latency, +duration] ~ baseline + A/2; blink dropout and
    # finite sampling allow a few percent of slack on the ideal value
    cfg = SynthGazeConfig(noise_sigma=0.0, seed=3)
    a = cfg.response_amplitude
    samples = synth_gaze(cfg, [marker(10.0)], 20.0)
    lo = 10.0 + cfg.response_latency
    hi = lo + cfg.response_duration
    window = [s.pupil_l for s in samples if s.valid_l and lo <= s.t <= hi]
    assert statistics.mean(window) - cfg.baseline >= 0.5 * a - 0.03 * a


def test_same_seed_reproduces_bitwise():
    cfg = SynthGazeConfig(noise_sigma=0.08, seed=99)
    events = [marker(3.0), marker(11.0, "e2")]
    assert synth_gaze(cfg, events, 30.0) == synth_gaze(cfg, events, 30.0)


def test_seed_changes_stream():
    events = [marker(3.0)]
    a = synth_gaze(SynthGazeConfig(seed=1), events, 5.0)
    b = synth_gaze(SynthGazeConfig(seed=2), events, 5.0)
    assert a != b


def test_eyes_identical_before_noise():
    cfg = SynthGazeConfig(noise_sigma=0.0, seed=5)
    for s in synth_gaze(cfg, [marker(2.0)], 8.0):
        assert s.pupil_l == s.pupil_r


def test_blink_fraction_near_two_percent():
    samples = synth_gaze(SynthGazeConfig(seed=8), [], 600.0)
    frac = sum(not s.valid_l for s in samples) / len(samples)
    assert frac == pytest.approx(0.02, abs=0.005)
    for s in samples:
        if not s.valid_l:
            assert s.pupil_l == 0.0 and not s.valid_r


def test_direction_is_unit_length():
    for s in synth_gaze(SynthGazeConfig(seed=2), [], 5.0):
        assert math.dist(s.direction, (0, 0, 0)) == pytest.approx(1.0, abs=1e-9)


def test_per_event_amplitude_overrides():
    cfg = SynthGazeConfig(noise_sigma=0.0, response_latency=0.0, seed=0)
    events = [marker(2.0), marker(10.0, "e2")]
    samples = synth_gaze(cfg, events, 20.0, amplitudes=[0.2, 0.6])
    def peak_near(t0):
        return max(s.pupil_l for s in samples
                   if s.valid_l and t0 <= s.t <= t0 + cfg.response_duration)
    # abs tolerance covers the peak sample itself being dropped as a blink
    assert peak_near(2.0) == pytest.approx(cfg.baseline + 0.2, abs=1e-3)
    assert peak_near(10.0) == pytest.approx(cfg.baseline + 0.6, abs=1e-3)


def test_incremental_generator_matches_batch():
    cfg = SynthGazeConfig(noise_sigma=0.05, seed=12)
    events = [marker(1.0)]
    batch = synth_gaze(cfg, events, 4.0)
    gen = SyntheticGaze(cfg)
    stream = [gen.next_sample([(1.0, cfg.response_amplitude)]) for _ in range(400)]
    assert stream == batch


def test_bump_shape():
    assert response_bump(-0.1, 2.0) == 0.0
    assert response_bump(2.1, 2.0) == 0.0
    assert response_bump(0.0, 2.0) == pytest.approx(0.0)
    assert response_bump(1.0, 2.0) == pytest.approx(1.0)
    assert response_bump(0.5, 2.0) == pytest.approx(0.5)
