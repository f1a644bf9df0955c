"""Pupil-diameter cleaning and event-locked workload statistics.

Cleaning per eye: drop invalid or out-of-range samples, bridge short gaps by
linear interpolation (long gaps stay missing), then median-smooth each valid
span. The median stage is iterated to a fixed point so the whole preprocessing
pass is idempotent. Missing values are carried as NaN.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..telemetry import EventMarker, GazeSample

PUPIL_RANGE = (0.0, 10.0)       # physiologically plausible diameter (0, 10] mm
MAX_FIXPOINT_PASSES = 50


class EmptyInput(ValueError):
    pass


class TimeAxisMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PreprocessParams:
    max_gap_s: float = 0.2          # longest gap bridged by interpolation
    median_width_s: float = 0.15    # sliding median window


@dataclass(frozen=True)
class PupilSeries:
    t: np.ndarray        # strictly increasing [s]
    value: np.ndarray    # [mm], NaN = missing
    source: str          # "left" | "right" | "mean"

    def __post_init__(self):
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float))
        object.__setattr__(self, "value", np.asarray(self.value, dtype=float))
        if self.t.shape != self.value.shape:
            raise ValueError("t and value must have the same length")
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("t must be strictly increasing")


@dataclass(frozen=True)
class EventWindowStat:
    event_id: str
    baseline_mean: float | None     # [mm]
    window_mean: float | None
    delta: float | None             # window - baseline [mm]
    n_baseline: int
    n_window: int

    @property
    def insufficient_data(self) -> bool:
        return self.n_baseline == 0 or self.n_window == 0


def _interpolate_short_gaps(t: np.ndarray, v: np.ndarray, max_gap_s: float) -> np.ndarray:
    """Fill NaN runs whose bracketing valid samples are at most max_gap_s apart."""
    out = v.copy()
    n = len(v)
    i = 0
    while i < n:
        if not np.isnan(out[i]):
            i += 1
            continue
        j = i
        while j < n and np.isnan(out[j]):
            j += 1
        if i > 0 and j < n and (t[j] - t[i - 1]) <= max_gap_s:
            out[i:j] = np.interp(t[i:j], [t[i - 1], t[j]], [out[i - 1], out[j]])
        i = j
    return out


def _median_pass(v: np.ndarray, half: int) -> np.ndarray:
    """One sliding-median pass; windows shrink symmetrically near the edges."""
    n = len(v)
    out = v.copy()
    w = 2 * half + 1
    if n >= w:
        out[half:n - half] = np.median(sliding_window_view(v, w), axis=1)
    for i in range(min(half, n)):
        k = min(i, n - 1 - i)
        out[i] = np.median(v[i - k:i + k + 1])
    for i in range(max(n - half, 0), n):
        k = min(i, n - 1 - i)
        out[i] = np.median(v[i - k:i + k + 1])
    return out


def _median_fixpoint(v: np.ndarray, half: int) -> np.ndarray:
    if half < 1 or len(v) < 3:
        return v
    cur = v
    for _ in range(MAX_FIXPOINT_PASSES):
        nxt = _median_pass(cur, half)
        if np.array_equal(nxt, cur):
            break
        cur = nxt
    return cur


def _smooth_valid_spans(t: np.ndarray, v: np.ndarray, width_s: float) -> np.ndarray:
    if len(t) > 1:
        dt = np.median(np.diff(t))
        half = max(int(round(width_s / dt)) // 2, 0)
    else:
        half = 0
    out = v.copy()
    n = len(v)
    i = 0
    while i < n:
        if np.isnan(out[i]):
            i += 1
            continue
        j = i
        while j < n and not np.isnan(out[j]):
            j += 1
        out[i:j] = _median_fixpoint(out[i:j], half)
        i = j
    return out


def _clean_eye(t: np.ndarray, pupil: np.ndarray, valid: np.ndarray,
               params: PreprocessParams) -> np.ndarray:
    lo, hi = PUPIL_RANGE
    v = np.where(valid & (pupil > lo) & (pupil <= hi), pupil, np.nan)
    v = _interpolate_short_gaps(t, v, params.max_gap_s)
    return _smooth_valid_spans(t, v, params.median_width_s)


def preprocess_pupil(samples: Sequence[GazeSample],
                     params: PreprocessParams = PreprocessParams()
                     ) -> tuple[PupilSeries, PupilSeries]:
    """Clean both eyes of a time-ordered gaze stream; returns (left, right)."""
    if not samples:
        raise EmptyInput("no gaze samples")
    t = np.array([s.t for s in samples])
    left = _clean_eye(t, np.array([s.pupil_l for s in samples]),
                      np.array([s.valid_l for s in samples], dtype=bool), params)
    right = _clean_eye(t, np.array([s.pupil_r for s in samples]),
                       np.array([s.valid_r for s in samples], dtype=bool), params)
    return (PupilSeries(t=t, value=left, source="left"),
            PupilSeries(t=t, value=right, source="right"))


def mean_pupil(left: PupilSeries, right: PupilSeries) -> PupilSeries:
    """Per-sample mean of the eyes; falls back to whichever eye is present."""
    if not np.array_equal(left.t, right.t):
        raise TimeAxisMismatch("left and right series have different time axes")
    stacked = np.vstack([left.value, right.value])
    present = ~np.isnan(stacked)
    counts = present.sum(axis=0)
    sums = np.where(present, stacked, 0.0).sum(axis=0)
    value = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
    return PupilSeries(t=left.t.copy(), value=value, source="mean")


def event_window_stats(series: PupilSeries, markers: Sequence[EventMarker],
                       baseline_s: float = 2.0, window_s: float = 5.0
                       ) -> list[EventWindowStat]:
    """Baseline [t0-baseline_s, t0) vs response window [t0, t0+window_s] per marker."""
    stats = []
    for m in sorted(markers, key=lambda m: m.t):
        base_mask = (series.t >= m.t - baseline_s) & (series.t < m.t)
        win_mask = (series.t >= m.t) & (series.t <= m.t + window_s)
        base = series.value[base_mask]
        win = series.value[win_mask]
        base = base[~np.isnan(base)]
        win = win[~np.isnan(win)]
        b = float(base.mean()) if base.size else None
        w = float(win.mean()) if win.size else None
        stats.append(EventWindowStat(
            event_id=m.event_id,
            baseline_mean=b,
            window_mean=w,
            delta=(w - b) if (b is not None and w is not None) else None,
            n_baseline=int(base.size),
            n_window=int(win.size),
        ))
    return stats
