"""Append-only JSON-lines session logs.

Every line is compact, key-sorted JSON, so a log written twice from the
same inputs is byte-identical. Headers carry the full configuration
(profile included) and deliberately no wall-clock fields: reproducibility
demands that replaying a session rewrite the exact same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

SCHEMA_VERSION = 1


class LogFormatError(ValueError):
    """Log line is not valid or not the expected record kind."""


def dumps_line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


class SessionLogWriter:
    """Incremental writer; each record is flushed as soon as it is written,
    so a crash leaves a parseable prefix."""

    def __init__(self, target: str | Path | IO[str]):
        if hasattr(target, "write"):
            self._fh: IO[str] = target  # type: ignore[assignment]
            self._owns = False
        else:
            self._fh = open(target, "w", encoding="utf-8", newline="\n")
            self._owns = True
        self._wrote_header = False
        self.trial_count = 0

    def write_header(self, session_id: str, mode: str, profile: dict,
                     **config) -> None:
        if self._wrote_header:
            raise LogFormatError("header already written")
        record = {"type": "header", "schema_version": SCHEMA_VERSION,
                  "session_id": session_id, "mode": mode, "profile": profile}
        record.update(config)
        self._write(record)
        self._wrote_header = True

    def write_trial(self, trial: dict) -> None:
        if not self._wrote_header:
            raise LogFormatError("trial before header")
        self._write({"type": "trial", "index": self.trial_count, **trial})
        self.trial_count += 1

    def write_event(self, event: dict) -> None:
        if not self._wrote_header:
            raise LogFormatError("event before header")
        self._write({"type": "event", "event": event})

    def write_end(self, summary: dict) -> None:
        self._write({"type": "end", "trials": self.trial_count, **summary})

    def close(self) -> None:
        if self._owns:
            self._fh.close()

    def _write(self, record: dict) -> None:
        self._fh.write(dumps_line(record))
        self._fh.flush()

    def __enter__(self) -> "SessionLogWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


@dataclass
class SessionLog:
    """Parsed log: header, trial records, event tape, completion flag."""

    header: dict
    trials: list[dict] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    end: dict | None = None

    @property
    def complete(self) -> bool:
        return self.end is not None

    @property
    def mode(self) -> str:
        return self.header.get("mode", "")

    @property
    def session_id(self) -> str:
        return self.header.get("session_id", "")


def parse_session_log(lines: Iterable[str]) -> SessionLog:
    """Parse JSON lines; tolerates a truncated final line (crash prefix)."""
    header: dict | None = None
    trials: list[dict] = []
    events: list[dict] = []
    end: dict | None = None
    for i, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            if header is None:
                raise LogFormatError("log header line is unreadable")
            break  # torn tail from an interrupted write
        kind = record.get("type")
        if i == 0:
            if kind != "header":
                raise LogFormatError("first line must be the header")
            if record.get("schema_version") != SCHEMA_VERSION:
                raise LogFormatError(
                    f"unsupported schema_version {record.get('schema_version')}")
            header = record
        elif kind == "trial":
            trials.append(record)
        elif kind == "event":
            events.append(record)
        elif kind == "end":
            end = record
        elif kind == "header":
            raise LogFormatError("duplicate header")
        # unknown record kinds are skipped for forward compatibility
    if header is None:
        raise LogFormatError("empty log")
    return SessionLog(header, trials, events, end)


def load_session_log(path: str | Path) -> SessionLog:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_session_log(fh)
