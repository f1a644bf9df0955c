"""Replay of recorded session logs."""

from __future__ import annotations

import gzip
import json
from pathlib import Path
from typing import Iterator

from .records import SessionHeader, TelemetryRecord, record_from_dict
from .writer import SESSION_FILENAME


class MissingHeader(Exception):
    pass


class CorruptRecord(Exception):
    def __init__(self, line_no: int, detail: str):
        super().__init__(f"corrupt record at line {line_no}: {detail}")
        self.line_no = line_no
        self.detail = detail


def session_path(path) -> Path:
    """Resolve a session directory or file to the log file itself."""
    p = Path(path)
    if p.is_dir():
        for name in (SESSION_FILENAME, SESSION_FILENAME + ".gz"):
            if (p / name).exists():
                return p / name
        raise FileNotFoundError(f"no {SESSION_FILENAME} under {p}")
    return p


def replay(path) -> Iterator[TelemetryRecord]:
    """Yield records in file order.

    Raises CorruptRecord (with the 1-based line number) at the first bad line;
    everything yielded before that stays valid. An empty file or one that does
    not start with a header raises MissingHeader.
    """
    p = session_path(path)
    opener = gzip.open if p.suffix == ".gz" else open
    with opener(p, "rt", encoding="utf-8") as fh:
        first = True
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                raise CorruptRecord(line_no, "blank line")
            try:
                rec = record_from_dict(json.loads(line))
            except Exception as e:
                raise CorruptRecord(line_no, repr(e)) from e
            if first:
                if not isinstance(rec, SessionHeader):
                    raise MissingHeader(f"{p} does not start with a session header")
                first = False
            yield rec
        if first:
            raise MissingHeader(f"{p} is empty")


def load_session(path) -> list[TelemetryRecord]:
    """Read a whole session into memory."""
    return list(replay(path))
