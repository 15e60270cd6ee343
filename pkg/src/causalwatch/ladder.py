"""Three-level causal-ladder queries over the naive Bayes filter.

Level 1 (association, "what is?") is exactly the posterior. Levels 2 and 3
add a signed empirical correction term: the class/context joint divided by
a single-attribute marginal picked by the denominator policy. The combined
retrospective form adds the outcome correction and subtracts the evidence
correction. Raw scores are reported verbatim (they are not guaranteed to
stay in [0,1]); a clamped, renormalized distribution is produced alongside
and out_of_range is flagged whenever clamping mattered.

Corrections use unsmoothed empirical frequencies, which makes the
reduction to level 1 exact whenever the correction joints vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counts import CountStore, EventSet
from .errors import QueryError, SchemaViolation, UndefinedDenominator
from .nbayes import Evidence, posterior

LEVELS = ("association", "intervention", "retrospection", "combined")
DENOMINATOR_POLICIES = ("last-evidence-attribute", "do-attribute")


@dataclass(frozen=True)
class LadderQuery:
    level: str
    evidence_x: Evidence = Evidence()
    outcome_y: Evidence | None = None
    do_target: tuple[str, str] | None = None
    denominator_policy: str = "last-evidence-attribute"
    smoothing: bool = True
    product_mode: str = "factorized"  # "power" raises the whole Bayes term to the n-th

    def __post_init__(self):
        if self.level not in LEVELS:
            raise QueryError(f"unknown ladder level {self.level!r}")
        if self.denominator_policy not in DENOMINATOR_POLICIES:
            raise QueryError(f"unknown denominator policy {self.denominator_policy!r}")
        if self.product_mode not in ("factorized", "power"):
            raise QueryError(f"unknown product mode {self.product_mode!r}")


@dataclass
class LadderResult:
    level: str
    raw_scores: dict[str, float]
    normalized_scores: dict[str, float]
    correction_terms: dict[str, float]
    out_of_range: bool
    correction_parts: dict[str, dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "raw_scores": self.raw_scores,
            "normalized_scores": self.normalized_scores,
            "correction_terms": self.correction_terms,
            "correction_parts": self.correction_parts,
            "out_of_range": self.out_of_range,
        }


def _bayes_term(store: CountStore, e: Evidence, smoothing: bool) -> dict[str, float]:
    return posterior(store, e, smoothing=smoothing).scores


def _marginal(store: CountStore, pair: tuple[str, str]) -> float:
    attr, value = pair
    p = store.value_count(attr, value) / store.total_events
    if p == 0.0:
        raise UndefinedDenominator("undefined correction denominator")
    return p


def _denominator_pair(q_policy: str, vector: Evidence, do_target) -> tuple[str, str]:
    if q_policy == "do-attribute" and do_target is not None:
        return do_target
    if len(vector) == 0:
        raise QueryError("correction denominator needs a nonempty conditioning vector")
    return vector.assignments[-1]


def _corrections(store: CountStore, context: Evidence, denom: float) -> dict[str, float]:
    """Per class: P(class AND context) / denom, all unsmoothed frequencies."""
    total = store.total_events
    out = {}
    for c in store.schema.class_labels:
        joint = store.count(EventSet(terms=context.assignments, class_label=c)) / total
        out[c] = joint / denom
    return out


def _finish(level: str, base, corrections, parts=None) -> LadderResult:
    labels = sorted(base)
    raw = {c: base[c] + corrections.get(c, 0.0) for c in labels}
    out_of_range = any(v < 0.0 or v > 1.0 for v in raw.values())
    clamped = {c: max(0.0, v) for c, v in raw.items()}
    s = sum(clamped.values())
    if s <= 0.0:
        raise QueryError("all corrected scores clamped to zero")
    normalized = {c: v / s for c, v in clamped.items()}
    return LadderResult(
        level=level,
        raw_scores=raw,
        normalized_scores=normalized,
        correction_terms={c: corrections.get(c, 0.0) for c in labels},
        out_of_range=out_of_range,
        correction_parts=parts or {},
    )


def what_is(store: CountStore, q: LadderQuery) -> LadderResult:
    """Association: identical to the naive Bayes posterior, corrections zero."""
    scores = _bayes_term(store, q.evidence_x, q.smoothing)
    return LadderResult(
        level="association",
        raw_scores=dict(scores),
        normalized_scores=dict(scores),
        correction_terms={c: 0.0 for c in scores},
        out_of_range=False,
    )


def what_if(store: CountStore, q: LadderQuery) -> LadderResult:
    """Intervention: Bayes term with the do-value substituted, plus the
    outcome correction P(class AND outcome) / P(denominator marginal)."""
    if q.do_target is None:
        raise QueryError("intervention query requires a do target")
    if q.outcome_y is None:
        raise QueryError("intervention query requires an outcome context")
    attr, raw_value = q.do_target
    value = store.schema.canonical_value(attr, raw_value)
    substituted = q.evidence_x.substitute(attr, value)
    base = _bayes_term(store, substituted, q.smoothing)
    denom_pair = _denominator_pair(q.denominator_policy, substituted, (attr, value))
    denom = _marginal(store, denom_pair)
    corrections = _corrections(store, q.outcome_y, denom)
    return _finish("intervention", base, corrections)


def why(store: CountStore, q: LadderQuery) -> LadderResult:
    """Retrospection: roles of evidence and outcome exchanged; the Bayes term
    conditions on the outcome vector, the correction comes from the evidence."""
    if q.outcome_y is None or len(q.outcome_y) == 0:
        raise QueryError("retrospection query requires a nonempty outcome vector")
    conditioning = q.outcome_y
    do_pair = None
    if q.do_target is not None:
        attr, raw_value = q.do_target
        value = store.schema.canonical_value(attr, raw_value)
        conditioning = conditioning.substitute(attr, value)
        do_pair = (attr, value)
    base = _bayes_term(store, conditioning, q.smoothing)
    denom_pair = _denominator_pair(q.denominator_policy, conditioning, do_pair)
    denom = _marginal(store, denom_pair)
    corrections = _corrections(store, q.evidence_x, denom)
    return _finish("retrospection", base, corrections)


def retrospective(store: CountStore, q: LadderQuery) -> LadderResult:
    """Combined form: Bayes term over the evidence, plus the outcome
    correction, minus the evidence correction."""
    if len(q.evidence_x) == 0 or q.outcome_y is None or len(q.outcome_y) == 0:
        raise QueryError("combined query requires nonempty evidence and outcome")
    base = _bayes_term(store, q.evidence_x, q.smoothing)
    if q.product_mode == "power":
        n = len(q.evidence_x)
        base = {c: v**n for c, v in base.items()}
    denom_y = _marginal(store, q.outcome_y.assignments[-1])
    denom_x = _marginal(store, q.evidence_x.assignments[-1])
    corr_y = _corrections(store, q.outcome_y, denom_y)
    corr_x = _corrections(store, q.evidence_x, denom_x)
    net = {c: corr_y[c] - corr_x[c] for c in corr_y}
    parts = {c: {"outcome": corr_y[c], "evidence": -corr_x[c]} for c in corr_y}
    return _finish("combined", base, net, parts)


def answer(store: CountStore, q: LadderQuery) -> LadderResult:
    """Dispatch a query to its level handler."""
    return {
        "association": what_is,
        "intervention": what_if,
        "retrospection": why,
        "combined": retrospective,
    }[q.level](store, q)


def environment_scope(store: CountStore) -> tuple[int, int]:
    """Cardinality of observed knowledge: (distinct attribute values seen,
    distinct class labels seen)."""
    x_m = sum(1 for _ in filter(None, store.value_marginals.values()))
    y_n = sum(1 for n in store.class_counts.values() if n > 0)
    return x_m, y_n
