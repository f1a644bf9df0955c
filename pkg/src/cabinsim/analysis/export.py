"""Plot-ready exports of one recorded session: pupil trace, events, and stats."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from ..telemetry import (
    EventMarker,
    ExplanationRecord,
    GazeSample,
    SessionHeader,
    TouchSample,
    VehicleSample,
    replay,
)
from .pupil import PreprocessParams, event_window_stats, mean_pupil, preprocess_pupil
from .requests import request_rate, requested_event_ids


def _fmt(v: float | None) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return f"{v:.6f}"


def export_timeseries(session, out_dir, baseline_s: float = 2.0, window_s: float = 5.0,
                      request_window_s: float = 10.0,
                      params: PreprocessParams = PreprocessParams()) -> dict:
    """Write pupil_timeseries.csv, events.csv, event_stats.csv, and summary.json.

    Outputs are a pure function of the session content, so re-running over the
    same input produces byte-identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    header = None
    gaze: list[GazeSample] = []
    touches: list[TouchSample] = []
    markers: list[EventMarker] = []
    explanations: list[ExplanationRecord] = []
    n_vehicle = 0
    for rec in replay(session):
        if isinstance(rec, SessionHeader):
            header = rec
        elif isinstance(rec, GazeSample):
            gaze.append(rec)
        elif isinstance(rec, TouchSample):
            touches.append(rec)
        elif isinstance(rec, EventMarker):
            markers.append(rec)
        elif isinstance(rec, ExplanationRecord):
            explanations.append(rec)
        elif isinstance(rec, VehicleSample):
            n_vehicle += 1

    paths = {
        "pupil_timeseries": out / "pupil_timeseries.csv",
        "events": out / "events.csv",
        "event_stats": out / "event_stats.csv",
        "summary": out / "summary.json",
    }

    stats = []
    if gaze:
        left, right = preprocess_pupil(gaze, params)
        mean = mean_pupil(left, right)
        with paths["pupil_timeseries"].open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "left", "right", "mean"])
            for i in range(len(mean.t)):
                w.writerow([_fmt(mean.t[i]), _fmt(left.value[i]),
                            _fmt(right.value[i]), _fmt(mean.value[i])])
        stats = event_window_stats(mean, markers, baseline_s, window_s)
    else:
        paths["pupil_timeseries"].write_text("t,left,right,mean\r\n")

    requested = requested_event_ids(touches, markers, request_window_s)
    explained = {e.event_id for e in explanations}
    with paths["events"].open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "event_id", "kind", "safety_critical", "requested", "explained"])
        for m in sorted(markers, key=lambda m: m.t):
            w.writerow([_fmt(m.t), m.event_id, m.kind, m.safety_critical,
                        m.event_id in requested, m.event_id in explained])

    with paths["event_stats"].open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["event_id", "baseline_mean", "window_mean", "delta",
                    "n_baseline", "n_window"])
        for s in stats:
            w.writerow([s.event_id, _fmt(s.baseline_mean), _fmt(s.window_mean),
                        _fmt(s.delta), s.n_baseline, s.n_window])

    req = request_rate(touches, explanations, markers, request_window_s)
    summary = {
        "scenario_id": header.scenario_id if header else "",
        "seed": header.seed if header else 0,
        "counts": {
            "gaze_samples": len(gaze),
            "touch_samples": len(touches),
            "vehicle_samples": n_vehicle,
            "event_markers": len(markers),
            "explanations": len(explanations),
        },
        "requests": {
            "n_events": req.n_events,
            "n_requested": req.n_requested,
            "rate": req.rate,
        },
        "params": {
            "baseline_s": baseline_s,
            "window_s": window_s,
            "request_window_s": request_window_s,
            "max_gap_s": params.max_gap_s,
            "median_width_s": params.median_width_s,
        },
    }
    paths["summary"].write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return {k: str(v) for k, v in paths.items()}
