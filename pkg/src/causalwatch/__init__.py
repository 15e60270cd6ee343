"""causalwatch: streaming naive-Bayes advisory engine with causal-ladder
queries and algedonic monitoring."""

from .counts import CountStore, EventSet, bayes_invert, conditional, independence_gap, joint_probability
from .ingest import EventRecord, ingest_event, ingest_file
from .ladder import LadderQuery, LadderResult, environment_scope, retrospective, what_if, what_is, why
from .monitor import AdvisoryReport, AlgedonicSignal, Hierarchy, MonitorConfig, UnitNode, aggregate
from .nbayes import Evidence, Posterior, classify, likelihood, posterior, prior
from .schema import Attribute, AttributeSchema, Binning, discretize

__all__ = [
    "Attribute",
    "AttributeSchema",
    "AdvisoryReport",
    "AlgedonicSignal",
    "Binning",
    "CountStore",
    "Evidence",
    "EventRecord",
    "EventSet",
    "Hierarchy",
    "LadderQuery",
    "LadderResult",
    "MonitorConfig",
    "Posterior",
    "UnitNode",
    "aggregate",
    "bayes_invert",
    "classify",
    "conditional",
    "discretize",
    "environment_scope",
    "independence_gap",
    "ingest_event",
    "ingest_file",
    "joint_probability",
    "likelihood",
    "posterior",
    "prior",
    "retrospective",
    "what_if",
    "what_is",
    "why",
]
