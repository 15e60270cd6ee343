"""Exception hierarchy shared across the engine."""


class CausalwatchError(Exception):
    """Base class for all engine errors."""


class SchemaViolation(CausalwatchError):
    """A record or query references attributes/values/classes outside the schema."""


class NoObservations(CausalwatchError):
    """An operation that divides by the sample size was called on an empty store."""


class IngestError(CausalwatchError):
    """A record was rejected during ingestion; the store is left untouched."""


class QueryError(CausalwatchError):
    """Base for precondition failures of posterior / ladder queries.

    Maps to HTTP 422 and CLI exit code 3.
    """


class NullConditioning(QueryError):
    """Conditioning event has zero count."""


class InconsistentProbability(QueryError):
    """A probability triple implies a value outside [0, 1]."""


class VanishingPosterior(QueryError):
    """Every class got zero unsmoothed score."""


class UndefinedDenominator(QueryError):
    """A ladder correction denominator has zero empirical probability."""
