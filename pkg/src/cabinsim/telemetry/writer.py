"""Append-only session log writer (JSON Lines, one record per line)."""

from __future__ import annotations

import gzip
import json
import time
from datetime import datetime, timezone
from pathlib import Path

from .. import __version__
from .records import SessionHeader, TelemetryRecord, record_to_dict

SESSION_FILENAME = "session.jsonl"
FLUSH_EVERY_RECORDS = 100
FLUSH_EVERY_SECONDS = 1.0
TIME_SLACK = 1e-6  # [s] allowed backwards jitter before a record is rejected


class IoError(Exception):
    pass


class SessionExists(IoError):
    pass


class NonMonotonicTime(ValueError):
    pass


class SessionWriter:
    """Single-owner writer; hand off between threads is fine, sharing is not."""

    def __init__(self, path: Path, header: SessionHeader):
        self.path = Path(path)
        if self.path.exists():
            raise SessionExists(f"refusing to overwrite {self.path}")
        opener = gzip.open if self.path.suffix == ".gz" else open
        try:
            self._fh = opener(self.path, "wt", encoding="utf-8")
        except OSError as e:
            raise IoError(str(e)) from e
        self._last_t = header.t
        self._unflushed = 0
        self._last_flush = time.monotonic()
        self.rejected_count = 0
        self._closed = False
        self._write(header)

    def _write(self, rec: TelemetryRecord) -> None:
        try:
            self._fh.write(json.dumps(record_to_dict(rec), separators=(",", ":")))
            self._fh.write("\n")
        except OSError as e:
            raise IoError(str(e)) from e
        self._unflushed += 1
        now = time.monotonic()
        if self._unflushed >= FLUSH_EVERY_RECORDS or now - self._last_flush >= FLUSH_EVERY_SECONDS:
            self._fh.flush()
            self._unflushed = 0
            self._last_flush = now

    def record(self, rec: TelemetryRecord) -> None:
        """Append one record; rejects (and counts) records going backwards in time."""
        if self._closed:
            raise IoError("writer is closed")
        if rec.t < self._last_t - TIME_SLACK:
            self.rejected_count += 1
            raise NonMonotonicTime(
                f"record t={rec.t!r} precedes last t={self._last_t!r}")
        self._last_t = max(self._last_t, rec.t)
        self._write(rec)

    def close(self) -> None:
        if not self._closed:
            self._fh.flush()
            self._fh.close()
            self._closed = True

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def open_session(directory, metadata: dict) -> SessionWriter:
    """Create <directory>/session.jsonl with its header line; never clobbers.

    metadata keys: seed (int), scenario_id (str); optionally compress=True
    to write session.jsonl.gz instead.
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(str(e)) from e
    name = SESSION_FILENAME + (".gz" if metadata.get("compress") else "")
    header = SessionHeader(
        seed=int(metadata.get("seed", 0)),
        scenario_id=str(metadata.get("scenario_id", "")),
        start_wall=datetime.now(timezone.utc).isoformat(),
        version=__version__,
    )
    return SessionWriter(directory / name, header)
