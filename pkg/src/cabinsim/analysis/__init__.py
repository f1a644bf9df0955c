from .pupil import (
    EmptyInput,
    EventWindowStat,
    PreprocessParams,
    PupilSeries,
    TimeAxisMismatch,
    event_window_stats,
    mean_pupil,
    preprocess_pupil,
)
from .requests import RequestStats, request_rate
from .export import export_timeseries

__all__ = [
    "EmptyInput",
    "EventWindowStat",
    "PreprocessParams",
    "PupilSeries",
    "TimeAxisMismatch",
    "event_window_stats",
    "mean_pupil",
    "preprocess_pupil",
    "RequestStats",
    "request_rate",
    "export_timeseries",
]
