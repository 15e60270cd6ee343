"""Event-stream ingestion: validation, discretization, incremental counting.

The event log is the database; a store is rebuilt by replaying its file.
Rejected records never touch the store, and out-of-order timestamps per
unit are rejected rather than buffered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .counts import CountStore
from .errors import IngestError, SchemaViolation
from .schema import AttributeSchema

_RECORD_FIELDS = {"unit", "ts", "values", "label"}


@dataclass(frozen=True)
class EventRecord:
    unit_id: str
    timestamp: int  # milliseconds since epoch, monotone non-decreasing per unit
    values: dict
    label: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "EventRecord":
        if not isinstance(data, dict):
            raise IngestError("record must be a JSON object")
        unknown = set(data) - _RECORD_FIELDS
        if unknown:
            raise IngestError(f"unknown record fields: {sorted(unknown)}")
        try:
            unit = data["unit"]
            ts = data["ts"]
            values = data["values"]
        except KeyError as exc:
            raise IngestError(f"missing record field {exc.args[0]!r}") from None
        if not isinstance(unit, str) or not unit:
            raise IngestError("'unit' must be a non-empty string")
        if not isinstance(ts, int) or isinstance(ts, bool):
            raise IngestError("'ts' must be an integer (milliseconds)")
        if not isinstance(values, dict):
            raise IngestError("'values' must be an object")
        label = data.get("label")
        if label is not None and not isinstance(label, str):
            raise IngestError("'label' must be a string when present")
        return cls(unit_id=unit, timestamp=ts, values=values, label=label)


@dataclass
class IngestStats:
    accepted: int = 0
    rejected: int = 0
    reject_reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected": self.rejected,
            "reject_reasons": self.reject_reasons,
        }


def ingest_event(store: CountStore, rec: EventRecord) -> None:
    """Validate and count one record. All-or-nothing: a rejected record
    leaves every counter and the retained rows untouched."""
    schema = store.schema
    last = store._last_ts.get(rec.unit_id)
    if last is not None and rec.timestamp < last:
        raise IngestError(
            f"out-of-order timestamp for unit {rec.unit_id!r}: {rec.timestamp} < {last}"
        )
    try:
        canon = {a: schema.canonical_value(a, v) for a, v in rec.values.items()}
        label = rec.label
        if label is not None:
            schema.class_index(label)
    except SchemaViolation as exc:
        raise IngestError(str(exc)) from exc
    store.add(canon, label)
    store._last_ts[rec.unit_id] = rec.timestamp


def ingest_file(path, schema: AttributeSchema) -> tuple[CountStore, IngestStats]:
    """Replay a line-delimited JSON event file into a fresh store.

    Malformed or rejected lines are counted and skipped, not fatal;
    processing is order-preserving.
    """
    store = CountStore(schema)
    stats = IngestStats()
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = EventRecord.from_dict(json.loads(line))
                ingest_event(store, rec)
            except (json.JSONDecodeError, IngestError) as exc:
                stats.rejected += 1
                stats.reject_reasons.append(f"line {lineno}: {exc}")
                continue
            stats.accepted += 1
    return store, stats
