"""Shared wire/CLI representation of ladder queries.

The CLI and the HTTP service both funnel through `build_query`, so a
query phrased either way resolves to the identical LadderQuery.
"""

from __future__ import annotations

from .errors import QueryError
from .ladder import LadderQuery
from .nbayes import Evidence
from .schema import AttributeSchema

LEVEL_ALIASES = {
    "what-is": "association",
    "what-if": "intervention",
    "why": "retrospection",
    "retro": "combined",
    "association": "association",
    "intervention": "intervention",
    "retrospection": "retrospection",
    "combined": "combined",
}

DENOMINATOR_ALIASES = {
    "last": "last-evidence-attribute",
    "do": "do-attribute",
    "last-evidence-attribute": "last-evidence-attribute",
    "do-attribute": "do-attribute",
}


def _evidence(schema: AttributeSchema, mapping: dict | None) -> Evidence:
    if not mapping:
        return Evidence()
    return Evidence.from_mapping(schema, mapping)


def build_query(schema: AttributeSchema, payload: dict) -> LadderQuery:
    """Build a LadderQuery from a plain dict (parsed CLI flags or JSON body)."""
    level_raw = payload.get("level")
    if level_raw not in LEVEL_ALIASES:
        raise QueryError(f"unknown query level {level_raw!r}")
    level = LEVEL_ALIASES[level_raw]
    denom_raw = payload.get("denominator", "last")
    if denom_raw not in DENOMINATOR_ALIASES:
        raise QueryError(f"unknown denominator policy {denom_raw!r}")
    do_target = None
    do_raw = payload.get("do")
    if do_raw is not None:
        if isinstance(do_raw, dict) and len(do_raw) == 1:
            (attr, value), = do_raw.items()
        elif isinstance(do_raw, (list, tuple)) and len(do_raw) == 2:
            attr, value = do_raw
        else:
            raise QueryError("'do' must name exactly one attribute=value pair")
        do_target = (str(attr), schema.canonical_value(str(attr), value))
    if level == "intervention" and do_target is None:
        raise QueryError("what-if queries require a do target")
    outcome = payload.get("outcome")
    return LadderQuery(
        level=level,
        evidence_x=_evidence(schema, payload.get("evidence")),
        outcome_y=_evidence(schema, outcome) if outcome else None,
        do_target=do_target,
        denominator_policy=DENOMINATOR_ALIASES[denom_raw],
        smoothing=payload.get("smoothing", "on") != "off",
        product_mode=payload.get("product_mode", "factorized"),
    )


def parse_assignments(text: str) -> dict:
    """Parse 'k=v,k2=v2' CLI syntax into a mapping."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise QueryError(f"expected attribute=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out
