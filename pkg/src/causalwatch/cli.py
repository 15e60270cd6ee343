"""Command-line entry points: train, query, simulate, serve.

Machine output is JSON on stdout; diagnostics go to stderr. Exit codes:
0 ok, 1 IO/config, 2 strict-mode data rejection, 3 query precondition,
64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CausalwatchError, IngestError, QueryError, SchemaViolation
from .ingest import ingest_file
from .ladder import answer
from .queryspec import build_query, parse_assignments
from .scenario import Scenario, run_scenario
from .schema import AttributeSchema

EX_OK = 0
EX_IO = 1
EX_STRICT = 2
EX_QUERY = 3
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _emit(payload, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def _load_store(schema_path, events_path):
    schema = AttributeSchema.from_file(schema_path)
    store, stats = ingest_file(events_path, schema)
    return schema, store, stats


def _cmd_train(args) -> int:
    try:
        schema, store, stats = _load_store(args.schema, args.events)
    except (OSError, SchemaViolation, json.JSONDecodeError) as exc:
        print(f"train: {exc}", file=sys.stderr)
        return EX_IO
    labeled = store.labeled_events
    priors = {}
    if labeled:
        priors = {c: n / labeled for c, n in store.class_counts.items() if n > 0}
    _emit({**stats.to_dict(), "priors": priors, "total_events": store.total_events}, args.pretty)
    if args.strict and stats.rejected > 0:
        return EX_STRICT
    return EX_OK


def _cmd_query(args) -> int:
    try:
        schema, store, _ = _load_store(args.schema, args.events)
    except (OSError, SchemaViolation, json.JSONDecodeError) as exc:
        print(f"query: {exc}", file=sys.stderr)
        return EX_IO
    payload = {
        "level": args.level,
        "evidence": parse_assignments(args.evidence) if args.evidence else {},
        "outcome": parse_assignments(args.outcome) if args.outcome else None,
        "do": parse_assignments(args.do) if args.do else None,
        "denominator": args.denominator,
        "smoothing": args.smoothing,
        "product_mode": args.product_mode,
    }
    try:
        q = build_query(schema, payload)
        result = answer(store.snapshot(), q)
    except (QueryError, SchemaViolation, CausalwatchError) as exc:
        print(f"query: {exc}", file=sys.stderr)
        return EX_QUERY
    _emit(result.to_dict(), args.pretty)
    return EX_OK


def _cmd_simulate(args) -> int:
    try:
        scenario = Scenario.from_file(args.scenario)
        summary = run_scenario(scenario, args.out)
    except (OSError, CausalwatchError, SchemaViolation) as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return EX_IO
    _emit(summary, args.pretty)
    return EX_OK


def _cmd_serve(args) -> int:
    from .monitor import Hierarchy
    from .service import create_app

    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
        schema = AttributeSchema.from_file(cfg["schema"])
        hierarchy = Hierarchy.from_file(cfg["hierarchy"], schema)
        warmup = cfg.get("events")
        if warmup:
            from .ingest import EventRecord

            with open(warmup) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        hierarchy.update_unit(EventRecord.from_dict(json.loads(line)))
                    except (IngestError, CausalwatchError, json.JSONDecodeError) as exc:
                        print(f"serve: skipping warmup line: {exc}", file=sys.stderr)
        host, _, port = cfg.get("bind", "127.0.0.1:8000").rpartition(":")
        port = int(port)
        if not (1 <= port <= 65535):
            raise CausalwatchError(f"port {port} out of range")
    except (OSError, KeyError, ValueError, CausalwatchError, SchemaViolation) as exc:
        print(f"serve: {exc}", file=sys.stderr)
        return EX_IO

    import uvicorn

    app = create_app(hierarchy, report_path=cfg.get("report_out"))
    try:
        uvicorn.run(app, host=host or "127.0.0.1", port=port,
                    log_level=cfg.get("log_level", "info"))
    except SystemExit as exc:
        return int(exc.code or 0)
    except OSError as exc:
        print(f"serve: {exc}", file=sys.stderr)
        return EX_IO
    return EX_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="causalwatch")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="build a store from an event file")
    train.add_argument("--schema", required=True)
    train.add_argument("--events", required=True)
    train.add_argument("--smoothing", choices=["on", "off"], default="on")
    train.add_argument("--strict", action="store_true")
    train.add_argument("--pretty", action="store_true")
    train.set_defaults(func=_cmd_train)

    query = sub.add_parser("query", help="run a causal-ladder query")
    query.add_argument("--schema", required=True)
    query.add_argument("--events", required=True)
    query.add_argument("--level", required=True,
                       choices=["what-is", "what-if", "why", "retro"])
    query.add_argument("--evidence", default="")
    query.add_argument("--outcome", default="")
    query.add_argument("--do", default="")
    query.add_argument("--denominator", choices=["last", "do"], default="last")
    query.add_argument("--smoothing", choices=["on", "off"], default="on")
    query.add_argument("--product-mode", dest="product_mode",
                       choices=["factorized", "power"], default="factorized")
    query.add_argument("--pretty", action="store_true")
    query.set_defaults(func=_cmd_query)

    simulate = sub.add_parser("simulate", help="run a seeded scenario replay")
    simulate.add_argument("--scenario", required=True)
    simulate.add_argument("--out", required=True)
    simulate.add_argument("--pretty", action="store_true")
    simulate.set_defaults(func=_cmd_simulate)

    serve = sub.add_parser("serve", help="run the HTTP/WS service")
    serve.add_argument("--config", required=True)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "query" and args.level == "what-if" and not args.do:
        parser.error("--do is required for what-if queries")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
