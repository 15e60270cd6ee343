"""Incremental count store and exact finite-sample probability arithmetic.

All probabilities produced here are empirical frequencies: integer counts
divided at query time, so the algebraic identities between joint, marginal
and conditional probabilities hold to floating-point exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InconsistentProbability,
    NoObservations,
    NullConditioning,
    SchemaViolation,
)
from .schema import AttributeSchema

_NO_VALUE = -1
_NO_LABEL = -1


@dataclass(frozen=True)
class EventSet:
    """A conjunction of (attribute = value) terms, optionally with a class term.

    The empty conjunction is the tautology (the whole sample space).
    """

    terms: tuple[tuple[str, str], ...] = ()
    class_label: str | None = None

    def __post_init__(self):
        attrs = [a for a, _ in self.terms]
        if len(set(attrs)) != len(attrs):
            raise SchemaViolation("at most one value per attribute in an event set")

    @classmethod
    def of(cls, class_label: str | None = None, **assignments: str) -> "EventSet":
        return cls(terms=tuple(sorted(assignments.items())), class_label=class_label)

    def conjoin(self, other: "EventSet") -> "EventSet | None":
        """Conjunction of two event sets; None when they are contradictory."""
        merged = dict(self.terms)
        for a, v in other.terms:
            if merged.get(a, v) != v:
                return None
            merged[a] = v
        label = self.class_label
        if other.class_label is not None:
            if label is not None and label != other.class_label:
                return None
            label = other.class_label
        return EventSet(terms=tuple(sorted(merged.items())), class_label=label)


class CountStore:
    """Joint/class/marginal counters plus the retained event rows.

    The aggregate counters are the classifier's working set; the retained
    rows answer arbitrary conjunction counts (multi-attribute joints are
    not derivable from per-attribute counters alone).

    Single-writer: `ingest` mutates, everything else reads. `snapshot`
    returns a frozen point-in-time copy.
    """

    def __init__(self, schema: AttributeSchema):
        self.schema = schema
        a, v, c = schema.n_attributes, schema.max_domain, schema.n_classes
        self._joint = np.zeros((a, v, c), dtype=np.int64)
        self._vmarg = np.zeros((a, v), dtype=np.int64)
        self._class = np.zeros(c, dtype=np.int64)
        self._total = 0
        self._rows = np.full((64, a), _NO_VALUE, dtype=np.int16)
        self._labels = np.full(64, _NO_LABEL, dtype=np.int16)
        self._last_ts: dict[str, int] = {}
        self._frozen = False

    # -- counter views (name-keyed, per the published contract) ------------

    @property
    def total_events(self) -> int:
        return self._total

    @property
    def labeled_events(self) -> int:
        return int(self._class.sum())

    @property
    def class_counts(self) -> dict[str, int]:
        return {c: int(self._class[i]) for i, c in enumerate(self.schema.class_labels)}

    @property
    def joint_counts(self) -> dict[tuple[str, str, str], int]:
        out = {}
        for ai, attr in enumerate(self.schema.attributes):
            for vi, val in enumerate(attr.domain):
                for ci, cls in enumerate(self.schema.class_labels):
                    n = int(self._joint[ai, vi, ci])
                    if n:
                        out[(attr.name, val, cls)] = n
        return out

    @property
    def value_marginals(self) -> dict[tuple[str, str], int]:
        out = {}
        for ai, attr in enumerate(self.schema.attributes):
            for vi, val in enumerate(attr.domain):
                n = int(self._vmarg[ai, vi])
                if n:
                    out[(attr.name, val)] = n
        return out

    # -- raw counter access (index space) ----------------------------------

    def joint_count(self, attr: str, value: str, class_label: str) -> int:
        ai = self.schema.attr_index(attr)
        vi = self.schema.value_index(attr, value)
        ci = self.schema.class_index(class_label)
        return int(self._joint[ai, vi, ci])

    def value_count(self, attr: str, value: str) -> int:
        ai = self.schema.attr_index(attr)
        vi = self.schema.value_index(attr, value)
        return int(self._vmarg[ai, vi])

    def class_count(self, class_label: str) -> int:
        return int(self._class[self.schema.class_index(class_label)])

    # -- mutation ----------------------------------------------------------

    def _grow(self):
        cap = self._rows.shape[0]
        rows = np.full((cap * 2, self._rows.shape[1]), _NO_VALUE, dtype=np.int16)
        labels = np.full(cap * 2, _NO_LABEL, dtype=np.int16)
        rows[:cap] = self._rows
        labels[:cap] = self._labels
        self._rows, self._labels = rows, labels

    def add(self, values: dict[str, str], label: str | None):
        """Record one event with canonical values. Validation happens upstream."""
        if self._frozen:
            raise RuntimeError("cannot ingest into a snapshot")
        if self._total == self._rows.shape[0]:
            self._grow()
        row = self._rows[self._total]
        for attr, value in values.items():
            ai = self.schema.attr_index(attr)
            vi = self.schema.value_index(attr, value)
            row[ai] = vi
            self._vmarg[ai, vi] += 1
        if label is not None:
            ci = self.schema.class_index(label)
            self._labels[self._total] = ci
            self._class[ci] += 1
            for attr, value in values.items():
                ai = self.schema.attr_index(attr)
                vi = self.schema.value_index(attr, value)
                self._joint[ai, vi, ci] += 1
        self._total += 1

    def snapshot(self) -> "CountStore":
        """Point-in-time immutable view; later ingestion leaves it untouched."""
        s = CountStore.__new__(CountStore)
        s.schema = self.schema
        s._joint = self._joint.copy()
        s._vmarg = self._vmarg.copy()
        s._class = self._class.copy()
        s._total = self._total
        s._rows = self._rows[: self._total].copy()
        s._labels = self._labels[: self._total].copy()
        s._last_ts = dict(self._last_ts)
        s._frozen = True
        return s

    # -- event counting ----------------------------------------------------

    def count(self, s: EventSet) -> int:
        """Number of retained events satisfying the conjunction."""
        n = self._total
        if n == 0:
            return 0
        # single-term fast paths straight off the counters
        if not s.terms:
            if s.class_label is None:
                return n
            return self.class_count(s.class_label)
        if len(s.terms) == 1:
            (attr, value), = s.terms
            if s.class_label is None:
                return self.value_count(attr, value)
            return self.joint_count(attr, value, s.class_label)
        mask = np.ones(n, dtype=bool)
        rows = self._rows[:n]
        for attr, value in s.terms:
            ai = self.schema.attr_index(attr)
            vi = self.schema.value_index(attr, value)
            mask &= rows[:, ai] == vi
        if s.class_label is not None:
            mask &= self._labels[:n] == self.schema.class_index(s.class_label)
        return int(np.count_nonzero(mask))


# -- probability operations -----------------------------------------------


def joint_probability(store: CountStore, s: EventSet) -> float:
    """Empirical probability count(s) / total_events."""
    if store.total_events == 0:
        raise NoObservations("no observations")
    return store.count(s) / store.total_events


def conditional(store: CountStore, target: EventSet, given: EventSet) -> float:
    """count(target AND given) / count(given)."""
    if store.total_events == 0:
        raise NoObservations("no observations")
    n_given = store.count(given)
    if n_given == 0:
        raise NullConditioning("conditioning on null event")
    both = target.conjoin(given)
    n_both = 0 if both is None else store.count(both)
    return n_both / n_given


def bayes_invert(p_a_given_b: float, p_a: float, p_b: float) -> float:
    """Invert a conditional: P(B|A) = P(A|B) P(B) / P(A)."""
    for name, p in (("p_a_given_b", p_a_given_b), ("p_a", p_a), ("p_b", p_b)):
        if not (0.0 <= p <= 1.0):
            raise InconsistentProbability(f"{name}={p} outside [0, 1]")
    if p_a == 0.0:
        raise InconsistentProbability("zero marginal")
    result = p_a_given_b * p_b / p_a
    if result > 1.0 + 1e-9:
        raise InconsistentProbability(
            f"inconsistent probability triple (implies {result})"
        )
    return result


def independence_gap(store: CountStore, a: EventSet, b: EventSet) -> float:
    """P(a|b) - P(a); zero (to tolerance) certifies empirical independence."""
    return conditional(store, a, b) - joint_probability(store, a)
