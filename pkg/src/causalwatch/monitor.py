"""Simplified recursive monitoring hierarchy with algedonic escalation.

Each leaf unit keeps its own store and a ring of recent classified
posteriors. A unit emits an algedonic signal once its distress posterior
stays at or above the threshold for the configured number of consecutive
windows; signals route to the parent and keep climbing while each
ancestor's own aggregated distress is also hot. Reports are advisory by
construction: the report type has no action field to set.
"""

from __future__ import annotations

import json
import time
from collections import deque
from dataclasses import dataclass, field

from .counts import CountStore
from .errors import CausalwatchError, QueryError, SchemaViolation
from .ingest import EventRecord, ingest_event
from .ladder import LadderQuery, answer
from .nbayes import Evidence, posterior
from .schema import AttributeSchema


@dataclass
class MonitorConfig:
    tau: float = 0.8
    k: int = 3
    window: int = 10
    aggregation: str = "mean"  # or "max", for sensitivity studies
    smoothing: bool = True

    def __post_init__(self):
        if not (0.0 <= self.tau <= 1.0):
            raise CausalwatchError(f"tau must be in [0,1], got {self.tau}")
        if self.k < 1 or self.window < 1:
            raise CausalwatchError("persistence and window must be >= 1")
        if self.k > self.window:
            raise CausalwatchError("persistence cannot exceed window size")
        if self.aggregation not in ("mean", "max"):
            raise CausalwatchError(f"unknown aggregation {self.aggregation!r}")


@dataclass(frozen=True)
class AlgedonicSignal:
    unit_id: str
    timestamp: int
    severity: float  # distress posterior at emission
    streak: int
    escalated_to: str | None

    def to_dict(self) -> dict:
        return {
            "unit": self.unit_id,
            "ts": self.timestamp,
            "severity": self.severity,
            "streak": self.streak,
            "escalated_to": self.escalated_to,
        }


@dataclass
class UnitNode:
    unit_id: str
    level: int
    parent: str | None
    window: deque = field(default_factory=deque)
    store: CountStore | None = None
    streak: int = 0

    def latest_posterior(self) -> dict[str, float] | None:
        return self.window[-1] if self.window else None


@dataclass
class AdvisoryReport:
    """Snapshot of the hierarchy's state. Advisory only: carries posteriors,
    signals and query answers, never commands."""

    timestamp: int
    unit_posteriors: dict[str, dict[str, float]]
    active_signals: list[dict]
    query_answers: list[dict]
    advisory_only: bool = True

    def to_dict(self) -> dict:
        return {
            "timestamp": self.timestamp,
            "unit_posteriors": self.unit_posteriors,
            "active_signals": self.active_signals,
            "query_answers": self.query_answers,
            "advisory_only": self.advisory_only,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def persistence_step(streak: int, distress: float, tau: float, k: int) -> tuple[int, bool]:
    """One step of the threshold/persistence rule: the streak grows while the
    distress posterior stays at or above tau, resets otherwise, and a signal
    fires from the k-th consecutive hot window onward."""
    streak = streak + 1 if distress >= tau else 0
    return streak, streak >= k


def aggregate(child_posteriors: list[dict[str, float]], mode: str = "mean") -> dict[str, float]:
    """Roll child posteriors up one level and renormalize."""
    if not child_posteriors:
        raise CausalwatchError("aggregate needs at least one child posterior")
    labels = sorted(child_posteriors[0])
    if mode == "mean":
        combined = {c: sum(p[c] for p in child_posteriors) / len(child_posteriors) for c in labels}
    elif mode == "max":
        combined = {c: max(p[c] for p in child_posteriors) for c in labels}
    else:
        raise CausalwatchError(f"unknown aggregation {mode!r}")
    s = sum(combined.values())
    if s <= 0.0:
        raise CausalwatchError("aggregated distribution sums to zero")
    return {c: v / s for c, v in combined.items()}


class Hierarchy:
    """The unit tree plus a global store fed by every record.

    Ladder queries and reports read the global store; per-unit
    classification reads each unit's own store.
    """

    def __init__(self, schema: AttributeSchema, units: list[UnitNode], config: MonitorConfig):
        self.schema = schema
        self.config = config
        self.units: dict[str, UnitNode] = {}
        self.children: dict[str, list[str]] = {}
        for node in units:
            if node.unit_id in self.units:
                raise CausalwatchError(f"duplicate unit {node.unit_id!r}")
            self.units[node.unit_id] = node
        for node in units:
            if node.parent is not None:
                parent = self.units.get(node.parent)
                if parent is None:
                    raise CausalwatchError(f"unit {node.unit_id!r} has unknown parent")
                if parent.level != node.level + 1:
                    raise CausalwatchError(
                        f"parent {parent.unit_id!r} must sit exactly one level above "
                        f"{node.unit_id!r}"
                    )
                self.children.setdefault(node.parent, []).append(node.unit_id)
            node.window = deque(maxlen=config.window)
            if node.store is None:
                node.store = CountStore(schema)
        self.global_store = CountStore(schema)
        self.signal_log: list[AlgedonicSignal] = []

    @classmethod
    def from_config(cls, data: dict, schema: AttributeSchema) -> "Hierarchy":
        config = MonitorConfig(
            tau=float(data.get("tau", 0.8)),
            k=int(data.get("k", 3)),
            window=int(data.get("window", 10)),
            aggregation=data.get("aggregation", "mean"),
        )
        units = [
            UnitNode(unit_id=u["id"], level=int(u["level"]), parent=u.get("parent"))
            for u in data["units"]
        ]
        return cls(schema, units, config)

    @classmethod
    def from_file(cls, path, schema: AttributeSchema) -> "Hierarchy":
        with open(path) as fh:
            return cls.from_config(json.load(fh), schema)

    # -- updates -----------------------------------------------------------

    def update_unit(self, rec: EventRecord) -> list[AlgedonicSignal]:
        """Ingest one record into its unit, classify, and emit/escalate
        an algedonic signal when the persistence rule fires."""
        node = self.units.get(rec.unit_id)
        if node is None:
            raise CausalwatchError(f"unknown unit {rec.unit_id!r}")
        ingest_event(node.store, rec)
        ingest_event(self.global_store, rec)
        if node.store.labeled_events == 0:
            return []  # nothing to classify against yet
        evidence = Evidence.from_mapping(self.schema, rec.values)
        post = posterior(node.store, evidence, smoothing=self.config.smoothing)
        node.window.append(dict(post.scores))
        distress = post.scores[self.schema.distress_class]
        node.streak, fire = persistence_step(
            node.streak, distress, self.config.tau, self.config.k
        )
        emitted: list[AlgedonicSignal] = []
        if fire:
            signal = AlgedonicSignal(
                unit_id=node.unit_id,
                timestamp=rec.timestamp,
                severity=distress,
                streak=node.streak,
                escalated_to=node.parent,
            )
            emitted.append(signal)
            emitted.extend(self.escalate(signal))
            self.signal_log.extend(emitted)
        return emitted

    def aggregated_posterior(self, unit_id: str) -> dict[str, float] | None:
        """A leaf's latest posterior, or the roll-up over children."""
        node = self.units[unit_id]
        kids = self.children.get(unit_id)
        if not kids:
            return node.latest_posterior()
        child_posts = [p for p in (self.aggregated_posterior(k) for k in kids) if p]
        if not child_posts:
            return None
        return aggregate(child_posts, self.config.aggregation)

    def escalate(self, signal: AlgedonicSignal) -> list[AlgedonicSignal]:
        """Route a signal up the tree while each ancestor is itself hot."""
        if signal.unit_id not in self.units:
            raise CausalwatchError(f"orphan unit {signal.unit_id!r}")
        hops: list[AlgedonicSignal] = []
        current = self.units[signal.unit_id].parent
        while current is not None:
            parent = self.units[current]
            post = self.aggregated_posterior(current)
            hot = post is not None and post[self.schema.distress_class] >= self.config.tau
            if not hot:
                break
            hops.append(
                AlgedonicSignal(
                    unit_id=current,
                    timestamp=signal.timestamp,
                    severity=post[self.schema.distress_class],
                    streak=signal.streak,
                    escalated_to=parent.parent,
                )
            )
            current = parent.parent
        return hops

    # -- reporting ---------------------------------------------------------

    def advisory_report(
        self, attach_queries: list[LadderQuery] | None = None, timestamp: int | None = None
    ) -> AdvisoryReport:
        if not self.units:
            raise CausalwatchError("empty hierarchy")
        if timestamp is None:
            timestamp = int(time.time() * 1000)
        posteriors = {}
        for unit_id in sorted(self.units):
            post = self.aggregated_posterior(unit_id)
            if post is not None:
                posteriors[unit_id] = post
        active = [
            {
                "unit": uid,
                "streak": node.streak,
                "severity": node.latest_posterior()[self.schema.distress_class],
            }
            for uid, node in sorted(self.units.items())
            if node.streak >= self.config.k and node.latest_posterior() is not None
        ]
        snapshot = self.global_store.snapshot()
        answers = []
        for q in attach_queries or []:
            try:
                answers.append({"level": q.level, "result": answer(snapshot, q).to_dict()})
            except (QueryError, SchemaViolation, CausalwatchError) as exc:
                answers.append({"level": q.level, "error": str(exc)})
        return AdvisoryReport(
            timestamp=timestamp,
            unit_posteriors=posteriors,
            active_signals=active,
            query_answers=answers,
        )
