import numpy as np
import pytest

from cabinsim.analysis import (
    EmptyInput,
    PupilSeries,
    TimeAxisMismatch,
    event_window_stats,
    mean_pupil,
    preprocess_pupil,
    request_rate,
)
from cabinsim.telemetry import (
    EventMarker,
    GazeSample,
    SynthGazeConfig,
    TouchSample,
    synth_gaze,
)

RATE = 100.0


def gaze(t, l=3.0, r=3.0, valid_l=True, valid_r=True):
    return GazeSample(t=t, origin=(0.0, 0.0, 0.0), direction=(1.0, 0.0, 0.0),
                      pupil_l=l if valid_l else 0.0, pupil_r=r if valid_r else 0.0,
                      valid_l=valid_l, valid_r=valid_r)


def stream(values, rate=RATE):
    """values: list of (pupil or None); None becomes an invalid sample."""
    out = []
    for i, v in enumerate(values):
        if v is None:
            out.append(gaze(i / rate, valid_l=False, valid_r=False))
        else:
            out.append(gaze(i / rate, l=v, r=v))
    return out


def marker(t, eid="e1", critical=True):
    return EventMarker(t=t, event_id=eid, kind="custom", safety_critical=critical,
                       explanation_issued=False)


def touch(t, target="explain_button"):
    return TouchSample(t=t, x_norm=0.1, y_norm=0.1, target_id=target, action="tap")


class TestPreprocess:
    def test_constant_series_is_fixed_point(self):
        left, right = preprocess_pupil(stream([3.0] * 200))
        assert np.all(left.value == 3.0)
        assert np.all(right.value == 3.0)

    def test_single_invalid_sample_interpolated(self):
        values = [3.0] * 50 + [None] + [3.2] * 50
        left, _ = preprocess_pupil(stream(values))
        assert not np.isnan(left.value[50])
        assert 3.0 <= left.value[50] <= 3.2

    def test_long_gap_stays_missing(self):
        values = [3.0] * 100 + [None] * 50 + [3.0] * 100  # 0.5 s gap at 100 Hz
        left, _ = preprocess_pupil(stream(values))
        assert np.isnan(left.value[100:150]).all()

    def test_out_of_range_values_removed(self):
        samples = stream([3.0] * 30)
        samples[10] = gaze(10 / RATE, l=12.0, r=12.0)   # beyond 10 mm
        left, _ = preprocess_pupil(samples)
        assert not np.isnan(left.value[10])  # short gap, re-filled by interpolation
        assert left.value[10] == pytest.approx(3.0)

    def test_median_suppresses_spike(self):
        values = [3.0] * 100
        values[50] = 6.0  # in-range blip survives validity checks
        left, _ = preprocess_pupil(stream(values))
        assert left.value[50] == pytest.approx(3.0)

    def test_idempotent(self):
        cfg = SynthGazeConfig(noise_sigma=0.1, seed=21)
        samples = synth_gaze(cfg, [marker(4.0)], 20.0)
        once_l, once_r = preprocess_pupil(samples)

        resamples = [
            gaze(t, l=l, r=r, valid_l=not np.isnan(l), valid_r=not np.isnan(r))
            for t, l, r in zip(once_l.t, once_l.value, once_r.value)
        ]
        twice_l, twice_r = preprocess_pupil(resamples)
        np.testing.assert_array_equal(once_l.value, twice_l.value)
        np.testing.assert_array_equal(once_r.value, twice_r.value)

    def test_empty_input_raises(self):
        with pytest.raises(EmptyInput):
            preprocess_pupil([])

    def test_eyes_processed_independently(self):
        samples = [gaze(i / RATE, l=3.0, r=4.0, valid_r=(i != 5)) for i in range(20)]
        left, right = preprocess_pupil(samples)
        assert np.all(left.value == 3.0)
        assert right.value[5] == pytest.approx(4.0)  # interpolated from neighbors


class TestMeanPupil:
    def series(self, values, source):
        return PupilSeries(t=np.arange(len(values), dtype=float), value=np.array(values),
                           source=source)

    def test_arithmetic_mean_when_both_present(self):
        m = mean_pupil(self.series([3.0], "left"), self.series([5.0], "right"))
        assert m.value[0] == 4.0

    def test_falls_back_to_present_eye(self):
        m = mean_pupil(self.series([3.0, np.nan], "left"), self.series([np.nan, 5.0], "right"))
        assert m.value[0] == 3.0
        assert m.value[1] == 5.0

    def test_missing_when_both_missing(self):
        m = mean_pupil(self.series([np.nan], "left"), self.series([np.nan], "right"))
        assert np.isnan(m.value[0])

    def test_time_axis_mismatch(self):
        a = self.series([1.0, 2.0], "left")
        b = PupilSeries(t=np.array([0.0, 0.5]), value=np.array([1.0, 2.0]), source="right")
        with pytest.raises(TimeAxisMismatch):
            mean_pupil(a, b)


class TestEventWindowStats:
    def test_constant_series_has_zero_delta(self):
        s = PupilSeries(t=np.arange(0, 30, 0.01), value=np.full(3000, 3.3), source="mean")
        stats = event_window_stats(s, [marker(10.0), marker(20.0, "e2")])
        assert all(st.delta == pytest.approx(0.0) for st in stats)

    def test_step_change_measured_exactly(self):
        # 3.0 before t=5, 3.4 from t=5 on; full 2 s baseline and 5 s window
        t = np.arange(0, 10, 0.01)
        v = np.where(t < 5.0, 3.0, 3.4)
        stats = event_window_stats(PupilSeries(t=t, value=v, source="mean"), [marker(5.0)])
        (st,) = stats
        assert st.baseline_mean == pytest.approx(3.0)
        assert st.window_mean == pytest.approx(3.4)
        assert st.delta == pytest.approx(0.4)

    def test_adding_constant_leaves_delta_unchanged(self):
        t = np.arange(0, 10, 0.01)
        v = np.where(t < 5.0, 3.0, 3.25)
        base = event_window_stats(PupilSeries(t=t, value=v, source="mean"), [marker(5.0)])
        shifted = event_window_stats(PupilSeries(t=t, value=v + 1.5, source="mean"),
                                     [marker(5.0)])
        assert shifted[0].delta == pytest.approx(base[0].delta)
        assert shifted[0].baseline_mean == pytest.approx(base[0].baseline_mean + 1.5)

    def test_missing_samples_excluded_from_means(self):
        t = np.arange(0, 10, 0.01)
        v = np.where(t < 5.0, 3.0, 4.0)
        v[498] = np.nan
        stats = event_window_stats(PupilSeries(t=t, value=v, source="mean"), [marker(5.0)])
        assert stats[0].n_baseline == 199
        assert stats[0].baseline_mean == pytest.approx(3.0)

    def test_insufficient_data_flagged(self):
        s = PupilSeries(t=np.arange(5.0, 8.0, 0.01), value=np.full(300, 3.0), source="mean")
        (st,) = event_window_stats(s, [marker(20.0)])
        assert st.insufficient_data
        assert st.delta is None

    def test_stats_ordered_by_event_time(self):
        s = PupilSeries(t=np.arange(0, 40, 0.01), value=np.full(4000, 3.0), source="mean")
        stats = event_window_stats(s, [marker(30.0, "late"), marker(10.0, "early")])
        assert [st.event_id for st in stats] == ["early", "late"]

    def test_closed_loop_synth_deltas_positive(self):
        markers = [marker(10.0, "a"), marker(30.0, "b"), marker(50.0, "c"), marker(70.0, "d")]
        cfg = SynthGazeConfig(noise_sigma=0.05, response_amplitude=0.4, seed=17)
        samples = synth_gaze(cfg, markers, 90.0)
        left, right = preprocess_pupil(samples)
        stats = event_window_stats(mean_pupil(left, right), markers)
        assert len(stats) == 4
        assert all(st.delta is not None and st.delta > 0 for st in stats)

    def test_closed_loop_delta_ranking_matches_amplitudes(self):
        markers = [marker(10.0, "a"), marker(30.0, "b"), marker(50.0, "c"), marker(70.0, "d")]
        amplitudes = [0.3, 0.6, 0.45, 0.9]
        cfg = SynthGazeConfig(noise_sigma=0.05, seed=23)
        samples = synth_gaze(cfg, markers, 90.0, amplitudes=amplitudes)
        left, right = preprocess_pupil(samples)
        stats = event_window_stats(mean_pupil(left, right), markers)
        by_delta = [st.event_id for st in sorted(stats, key=lambda s: s.delta)]
        by_amp = [m.event_id for _, m in sorted(zip(amplitudes, markers), key=lambda p: p[0])]
        assert by_delta == by_amp


class TestRequestRate:
    MARKERS = [marker(10.0, "e1"), marker(30.0, "e2"), marker(50.0, "e3"), marker(70.0, "e4")]

    def test_three_of_four_requested(self):
        touches = [touch(12.0), touch(33.0), touch(51.0)]
        stats = request_rate(touches, [], self.MARKERS, window_s=10.0)
        assert stats.n_events == 4
        assert stats.n_requested == 3
        assert stats.rate == 0.75

    def test_no_touches_rate_zero(self):
        stats = request_rate([], [], self.MARKERS, window_s=10.0)
        assert stats.rate == 0.0

    def test_every_event_requested(self):
        touches = [touch(m.t + 1.0) for m in self.MARKERS]
        assert request_rate(touches, [], self.MARKERS, window_s=10.0).rate == 1.0

    def test_out_of_window_touch_ignored(self):
        stats = request_rate([touch(21.0)], [], self.MARKERS, window_s=10.0)
        assert stats.n_requested == 0

    def test_non_explain_touches_ignored(self):
        stats = request_rate([touch(11.0, target="volume_slider")], [], self.MARKERS, 10.0)
        assert stats.n_requested == 0

    def test_only_safety_critical_events_count(self):
        markers = self.MARKERS + [marker(90.0, "info", critical=False)]
        stats = request_rate([], [], markers, 10.0)
        assert stats.n_events == 4

    def test_monotone_in_touches(self):
        touches = [touch(12.0)]
        r1 = request_rate(touches, [], self.MARKERS, 10.0).rate
        r2 = request_rate(touches + [touch(31.0)], [], self.MARKERS, 10.0).rate
        assert r2 >= r1

    def test_no_events_rate_zero(self):
        assert request_rate([touch(1.0)], [], [], 10.0).rate == 0.0
