"""Additively-smoothed naive Bayes posterior over a count store.

Smoothing divides by N_c plus the number of classes (the default), with a
conventional alternative that divides by N_c plus the attribute's
value-domain size (smoothing_denominator="values"). Scores accumulate in
log space and are normalized once at the end; missing evidence attributes
contribute no factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .counts import CountStore
from .errors import NoObservations, SchemaViolation, VanishingPosterior
from .schema import AttributeSchema


@dataclass(frozen=True)
class Evidence:
    """Partial assignment of attributes to canonical values."""

    assignments: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        attrs = [a for a, _ in self.assignments]
        if len(set(attrs)) != len(attrs):
            raise SchemaViolation("at most one value per attribute in evidence")

    @classmethod
    def of(cls, **assignments: str) -> "Evidence":
        return cls(assignments=tuple(assignments.items()))

    @classmethod
    def from_mapping(cls, schema: AttributeSchema, raw: dict) -> "Evidence":
        """Validate and canonicalize a raw attribute -> value mapping."""
        canon = tuple((a, schema.canonical_value(a, v)) for a, v in raw.items())
        return cls(assignments=canon)

    def validate(self, schema: AttributeSchema) -> None:
        for attr, value in self.assignments:
            schema.value_index(attr, value)

    def get(self, attr: str) -> str | None:
        for a, v in self.assignments:
            if a == attr:
                return v
        return None

    def substitute(self, attr: str, value: str) -> "Evidence":
        """Replace (or append) one attribute slot, preserving order."""
        if self.get(attr) is None:
            return Evidence(assignments=self.assignments + ((attr, value),))
        return Evidence(
            assignments=tuple((a, value if a == attr else v) for a, v in self.assignments)
        )

    def __len__(self) -> int:
        return len(self.assignments)


@dataclass
class Posterior:
    scores: dict[str, float]
    log_scores: dict[str, float]
    normalized: bool = True
    smoothing_used: bool = True

    def argmax(self) -> str:
        best = max(self.scores.values())
        return min(c for c, s in self.scores.items() if s == best)


def likelihood(
    store: CountStore,
    attribute: str,
    value: str,
    class_label: str,
    smoothing: bool = True,
    smoothing_denominator: str = "classes",
) -> float:
    """Conditional P(attribute=value | class), additively smoothed on request.

    Smoothed: (N_ic + 1) / (N_c + d) with d = number of classes by default,
    or the attribute's domain size with smoothing_denominator="values".
    Unsmoothed: N_ic / N_c.
    """
    n_ic = store.joint_count(attribute, value, class_label)
    n_c = store.class_count(class_label)
    if smoothing:
        if smoothing_denominator == "classes":
            d = store.schema.n_classes
        elif smoothing_denominator == "values":
            d = len(store.schema.attribute(attribute).domain)
        else:
            raise ValueError(f"unknown smoothing_denominator {smoothing_denominator!r}")
        return (n_ic + 1) / (n_c + d)
    if n_c == 0:
        raise NoObservations(
            f"class {class_label!r} has no observations; enable smoothing"
        )
    return n_ic / n_c


def prior(store: CountStore, class_label: str, smoothing: bool = True) -> float:
    """Empirical class frequency over labeled events; smoothed (N_c+1)/(N+c)."""
    n = store.labeled_events
    n_c = store.class_count(class_label)
    if smoothing:
        return (n_c + 1) / (n + store.schema.n_classes)
    if n == 0:
        raise NoObservations("no labeled observations")
    return n_c / n


def _evidence_arrays(store: CountStore, e: Evidence, smoothing_denominator: str):
    schema = store.schema
    K = len(e.assignments)
    joint = np.empty((K, schema.n_classes), dtype=np.float64)
    denom_add = np.empty(K, dtype=np.float64)
    for k, (attr, value) in enumerate(e.assignments):
        ai = schema.attr_index(attr)
        vi = schema.value_index(attr, value)
        joint[k, :] = store._joint[ai, vi, :]
        if smoothing_denominator == "classes":
            denom_add[k] = schema.n_classes
        else:
            denom_add[k] = len(schema.attributes[ai].domain)
    return joint, denom_add


def posterior(
    store: CountStore,
    e: Evidence,
    smoothing: bool = True,
    smoothing_denominator: str = "classes",
) -> Posterior:
    """Per-class score proportional to prior times the product of likelihoods.

    The evidence marginal is realized as the normalization constant over
    classes. Raises when no class retains positive unsmoothed score.
    """
    schema = store.schema
    if store.labeled_events == 0:
        raise NoObservations("store has no labeled events")
    e.validate(schema)
    if smoothing_denominator not in ("classes", "values"):
        raise ValueError(f"unknown smoothing_denominator {smoothing_denominator!r}")
    joint, denom_add = _evidence_arrays(store, e, smoothing_denominator)
    class_counts = store._class
    logs = kernels.log_posterior_scores(
        joint, class_counts, denom_add, store.labeled_events, schema.n_classes, smoothing
    )
    if not np.isfinite(logs).any():
        raise VanishingPosterior("vanishing posterior; enable smoothing")
    norm = kernels.normalize_log_scores(logs)
    labels = schema.class_labels
    return Posterior(
        scores={c: float(norm[i]) for i, c in enumerate(labels)},
        log_scores={c: float(logs[i]) for i, c in enumerate(labels)},
        normalized=True,
        smoothing_used=smoothing,
    )


def classify(
    store: CountStore,
    e: Evidence,
    smoothing: bool = True,
    smoothing_denominator: str = "classes",
) -> tuple[str, Posterior]:
    """Argmax class; ties broken by lexicographically smallest label."""
    post = posterior(store, e, smoothing, smoothing_denominator)
    return post.argmax(), post
