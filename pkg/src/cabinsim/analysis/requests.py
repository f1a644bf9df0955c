"""Explanation-request statistics over safety-critical events."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..telemetry import EventMarker, ExplanationRecord, TouchSample

EXPLAIN_TARGET = "explain_button"


@dataclass(frozen=True)
class RequestStats:
    n_events: int        # safety-critical events in the session
    n_requested: int     # events with at least one in-window explain touch
    rate: float          # n_requested / n_events, 0 when there are no events


def requested_event_ids(touches: Sequence[TouchSample], markers: Sequence[EventMarker],
                        window_s: float) -> set[str]:
    touch_times = [t.t for t in touches if t.target_id == EXPLAIN_TARGET]
    out = set()
    for m in markers:
        if any(m.t <= tt <= m.t + window_s for tt in touch_times):
            out.add(m.event_id)
    return out


def request_rate(touches: Sequence[TouchSample],
                 explanations: Sequence[ExplanationRecord],
                 markers: Sequence[EventMarker],
                 window_s: float = 10.0) -> RequestStats:
    """Fraction of safety-critical events with an explain touch inside the window.

    explanations are accepted for cross-checking callers but the rate is
    defined purely by touches; an issued explanation without a logged touch
    does not count as a request.
    """
    critical = [m for m in markers if m.safety_critical]
    hit = requested_event_ids(touches, critical, window_s)
    n = len(critical)
    return RequestStats(n_events=n, n_requested=len(hit),
                        rate=(len(hit) / n) if n else 0.0)
