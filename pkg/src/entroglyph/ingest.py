"""Sensor reading ingestion and hourly windowed summaries.

Readings arrive as CSV rows ``sensor_id,timestamp,value,measure`` (RFC
3339 timestamps) or as a JSON array of objects with the same fields.
Summaries carry the per-sensor mean and unbiased variance over one
window; a window with a single reading has no variance, which downstream
code treats as the missing-uncertainty case.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .errors import MalformedRow, UnknownFormat

__all__ = [
    "SensorReading",
    "SensorSummary",
    "parse_readings",
    "summarize_window",
    "summaries_to_json",
    "summary_to_dict",
    "summary_from_dict",
]

_COLUMNS = ("sensor_id", "timestamp", "value", "measure")


@dataclass(frozen=True)
class SensorReading:
    sensor_id: str
    timestamp: datetime
    value: float
    measure: str


@dataclass(frozen=True)
class SensorSummary:
    """Per-sensor aggregate over one time window.

    Variance is present exactly when the window held at least two
    readings; a missing variance is the epistemic case that renders as
    the null glyph.
    """

    sensor_id: str
    window_start: datetime
    window_end: datetime
    mean: float
    variance: float | None
    count: int
    location: tuple | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if (self.variance is None) != (self.count < 2):
            raise ValueError("variance must be present iff count >= 2")
        if self.variance is not None and self.variance < 0:
            raise ValueError("variance must be non-negative")


def _parse_timestamp(raw: str) -> datetime:
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        raise ValueError("timestamp lacks a UTC offset")
    return ts.astimezone(timezone.utc)


def _to_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _build_reading(row: int, sensor_id, timestamp, value, measure) -> SensorReading:
    sensor_id = str(sensor_id).strip()
    if not sensor_id:
        raise MalformedRow(row, "empty sensor_id")
    try:
        ts = _parse_timestamp(str(timestamp))
    except ValueError as exc:
        raise MalformedRow(row, f"bad timestamp {timestamp!r}: {exc}") from exc
    try:
        val = float(value)
    except (TypeError, ValueError) as exc:
        raise MalformedRow(row, f"bad value {value!r}") from exc
    if not math.isfinite(val):
        raise MalformedRow(row, f"non-finite value {value!r}")
    return SensorReading(sensor_id, ts, val, str(measure).strip())


def parse_readings(source, format: str = "csv") -> list[SensorReading]:
    """Parse a byte/text stream of readings.

    The CSV form may start with a header row repeating the column names.
    Row indices in errors are 1-based positions in the source.
    """
    if format == "csv":
        return _parse_csv(_to_text(source))
    if format == "json":
        return _parse_json(_to_text(source))
    raise UnknownFormat(f"unknown reading format {format!r}")


def _parse_csv(text: str) -> list[SensorReading]:
    readings = []
    for row_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row_no == 1 and [c.strip().lower() for c in row] == list(_COLUMNS):
            continue
        if len(row) != 4:
            raise MalformedRow(row_no, f"expected 4 fields, got {len(row)}")
        readings.append(_build_reading(row_no, *row))
    return readings


def _parse_json(text: str) -> list[SensorReading]:
    if not text.strip():
        return []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRow(1, f"invalid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise MalformedRow(1, "top-level JSON value must be an array")
    readings = []
    for i, entry in enumerate(doc, start=1):
        if not isinstance(entry, dict):
            raise MalformedRow(i, "array element is not an object")
        missing = [c for c in _COLUMNS if c not in entry]
        if missing:
            raise MalformedRow(i, f"missing fields: {', '.join(missing)}")
        readings.append(_build_reading(i, *(entry[c] for c in _COLUMNS)))
    return readings


def _floor_to_hour(ts: datetime) -> datetime:
    return ts.replace(minute=0, second=0, microsecond=0)


def summarize_window(readings, window: timedelta = timedelta(hours=1),
                     aligned_to: datetime | None = None,
                     locations: dict | None = None) -> list[SensorSummary]:
    """Summarize readings falling in [aligned_to, aligned_to + window).

    ``aligned_to`` defaults to the earliest reading's clock hour. The
    variance is the unbiased (n-1) sample variance and is absent for
    single-reading sensors. Output is sorted by sensor id, so the result
    does not depend on reading order.
    """
    readings = list(readings)
    if not readings:
        return []
    if aligned_to is None:
        aligned_to = _floor_to_hour(min(r.timestamp for r in readings))
    end = aligned_to + window

    groups: dict[str, list[float]] = {}
    for r in readings:
        if aligned_to <= r.timestamp < end:
            groups.setdefault(r.sensor_id, []).append(r.value)

    summaries = []
    for sensor_id in sorted(groups):
        values = groups[sensor_id]
        variance = statistics.variance(values) if len(values) >= 2 else None
        summaries.append(SensorSummary(
            sensor_id, aligned_to, end, statistics.fmean(values), variance,
            len(values),
            None if locations is None else locations.get(sensor_id)))
    return summaries


def summary_to_dict(s: SensorSummary) -> dict:
    return {
        "sensor_id": s.sensor_id,
        "window_start": s.window_start.isoformat(),
        "window_end": s.window_end.isoformat(),
        "mean": s.mean,
        "variance": s.variance,
        "count": s.count,
        "location": list(s.location) if s.location is not None else None,
    }


def summary_from_dict(doc: dict) -> SensorSummary:
    loc = doc.get("location")
    return SensorSummary(
        doc["sensor_id"],
        _parse_timestamp(doc["window_start"]),
        _parse_timestamp(doc["window_end"]),
        float(doc["mean"]),
        None if doc.get("variance") is None else float(doc["variance"]),
        int(doc["count"]),
        None if loc is None else tuple(loc),
    )


def summaries_to_json(summaries) -> str:
    return json.dumps([summary_to_dict(s) for s in summaries], indent=2)
