"""Command-line interface.

Verbs: run a single job config, run the catalogue suite, export a graph
as an edge list, and scan connection sets for bounded independence
number.  Reports go to stdout (or --output) as canonical JSON; failures
exit with distinct codes: 2 parse, 3 validation, 4 size-limit refusal,
5 property-check failure.  No environment variables are consulted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .catalogue import default_catalogue
from .config import (
    CONFIG_SCHEMA,
    _normalize_group_spec,
    execute,
    export_edge_list,
    group_from_spec,
    parse_config,
)
from .deltagraph import scan_bounded_alpha, symmetric_connection_sets
from .errors import EXIT_OK, EXIT_PROPERTY, GsrecError, ParseError
from .report import canonical_json, make_report, set_payload
from .suite import SuiteOptions, run_suite


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_run(args: argparse.Namespace) -> int:
    job = parse_config(_read(args.config))
    result, work, ok = execute(job)
    report = make_report(job.command, result, inputs=job.normalized,
                         work_units=work)
    _emit(canonical_json(report), args.output)
    return EXIT_OK if ok else EXIT_PROPERTY


def _cmd_export_graph(args: argparse.Namespace) -> int:
    job = parse_config(_read(args.config))
    _emit(export_edge_list(job), args.output)
    return EXIT_OK


def _parse_group_config(text: str) -> tuple:
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("config: expected a JSON object")
    extra = sorted(set(raw) - {"schema", "group"})
    if extra:
        raise ParseError(f"config: unknown field(s) {', '.join(extra)}")
    schema = raw.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ParseError(f"config.schema: expected {CONFIG_SCHEMA!r}, got {schema!r}")
    if "group" not in raw:
        raise ParseError("config: missing required field 'group'")
    group = group_from_spec(raw["group"])
    return group, _normalize_group_spec(raw["group"])


def _cmd_scan(args: argparse.Namespace) -> int:
    group, group_norm = _parse_group_config(_read(args.config))
    hits = [
        {"connection": set_payload(h.connection, group), "alpha": h.alpha}
        for h in scan_bounded_alpha(group, args.alpha_bound, args.budget)
    ]
    scanned = min(args.budget, len(symmetric_connection_sets(group)))
    result = {"hits": hits, "scanned": scanned}
    inputs = {"group": group_norm, "alpha_bound": args.alpha_bound,
              "budget": args.budget}
    report = make_report("scan", result, inputs=inputs, work_units=scanned)
    _emit(canonical_json(report), args.output)
    return EXIT_OK


def _load_catalogue_specs(path: str) -> list:
    raw_text = _read(path)
    try:
        raw = json.loads(raw_text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalogue is not valid JSON: {exc}") from exc
    if isinstance(raw, dict):
        if sorted(set(raw) - {"schema", "groups"}):
            raise ParseError("catalogue: expected only 'schema' and 'groups'")
        raw = raw.get("groups")
    if not isinstance(raw, list):
        raise ParseError("catalogue: expected a list of group specs")
    return raw


def _cmd_suite(args: argparse.Namespace) -> int:
    options = SuiteOptions(jobs=args.jobs)
    items: list[tuple[str, object]] = []
    if args.catalogue is None:
        inputs_catalogue: object = "default"
        for group in default_catalogue():
            if args.max_order is None or group.order <= args.max_order:
                items.append(("group", group))
    else:
        specs = _load_catalogue_specs(args.catalogue)
        echoed = []
        for i, spec in enumerate(specs):
            try:
                group = group_from_spec(spec, f"catalogue[{i}]")
            except GsrecError as exc:
                # one bad entry aborts only itself; the batch continues
                items.append(("error", {
                    "group": f"catalogue[{i}]",
                    "status": "error",
                    "error": str(exc),
                    "error_exit_code": exc.exit_code,
                }))
                echoed.append(spec)
                continue
            echoed.append(_normalize_group_spec(spec))
            if args.max_order is None or group.order <= args.max_order:
                items.append(("group", group))
        inputs_catalogue = echoed
    groups = [obj for kind, obj in items if kind == "group"]
    payload = run_suite(groups, options)
    suite_entries = iter(payload["entries"])
    entries = []
    for kind, obj in items:
        entries.append(next(suite_entries) if kind == "group" else obj)
    errors = [e for e in entries if e["status"] == "error"]
    payload["entries"] = entries
    payload["summary"]["errors"] = len(errors)
    payload["ok"] = payload["ok"] and not errors
    inputs = {"catalogue": inputs_catalogue, "max_order": args.max_order,
              "jobs": args.jobs}
    work = sum(payload["summary"]["totals"].values())
    report = make_report("suite", payload, inputs=inputs, work_units=work,
                         seed=options.seed)
    _emit(canonical_json(report), args.output)
    if errors:
        return errors[0]["error_exit_code"]
    if not payload["ok"]:
        return EXIT_PROPERTY
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsrec",
        description="Exact finite-scale recurrence combinatorics on G-spaces.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="execute one job config")
    p_run.add_argument("config", help="path to a JSON job config")
    p_run.add_argument("--output", help="write the report here instead of stdout")
    p_run.set_defaults(fn=_cmd_run)

    p_suite = sub.add_parser("suite", help="run the verification suite")
    p_suite.add_argument("--catalogue", help="JSON file with a list of group specs")
    p_suite.add_argument("--max-order", type=int, default=None,
                         help="skip groups above this order")
    p_suite.add_argument("--jobs", type=int, default=1,
                         help="worker threads (output is identical for any value)")
    p_suite.add_argument("--output", help="write the report here instead of stdout")
    p_suite.set_defaults(fn=_cmd_suite)

    p_export = sub.add_parser("export-graph",
                              help="write the Cayley graph as an edge list")
    p_export.add_argument("config", help="path to a JSON job config")
    p_export.add_argument("--output", help="write the edge list here instead of stdout")
    p_export.set_defaults(fn=_cmd_export_graph)

    p_scan = sub.add_parser("scan",
                            help="list connection sets with small independence number")
    p_scan.add_argument("config", help="path to a JSON config naming a group")
    p_scan.add_argument("--alpha-bound", type=int, required=True,
                        help="report sets whose graph has alpha strictly below this")
    p_scan.add_argument("--budget", type=int, default=4096,
                        help="how many connection sets to examine")
    p_scan.add_argument("--output", help="write the report here instead of stdout")
    p_scan.set_defaults(fn=_cmd_scan)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GsrecError as exc:
        print(f"gsrec: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
