"""Job configs: parse, validate, normalize, and execute.

A job is a JSON document naming a group, an action (left-regular by
default), optionally a set family and labeled sets, one command, and its
parameters.  Parsing produces a normalized form whose canonical JSON
re-parses to the same job (round-trip stable).  Malformed structure,
unknown fields, undefined labels, and out-of-range indices are parse
errors; mathematical refusals (broken tables, nonmember sets, asymmetric
connection sets) surface as validation errors from the core modules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .algebra import (
    ActionTable,
    GroupTable,
    SubsetMask,
    cyclic_group,
    dihedral_group,
    explicit_group,
    left_regular_action,
    make_action,
    product_group,
    symmetric_group,
)
from .covering import (
    max_disjoint_translates,
    min_cover,
    point_greedy_cover,
    prop2_check,
)
from .deltagraph import (
    cayley_graph,
    delta_parameter,
    edge_list,
    find_delta_system,
    independence_number,
    is_delta_n_set,
    max_clique,
    ramsey_extract,
)
from .errors import ParseError
from .families import (
    SetFamily,
    all_nonempty_family,
    check_flags,
    explicit_family,
    make_measure,
    min_size_family,
    minimal_members,
    positive_family,
)
from .recurrence import (
    delta,
    delta_simple,
    is_left_topological,
    is_recurrent,
    prop1_witness_check,
    recurrence_filter_base,
)
from .report import fraction_str, set_payload

CONFIG_SCHEMA = "gsrec-config/1"

PROPERTY_COMMANDS = frozenset(
    {"is_left_topological", "prop1_witness_check", "prop2_check"}
)

COMMANDS = frozenset({
    "delta", "delta_simple", "is_recurrent", "recurrence_filter_base",
    "is_left_topological", "prop1_witness_check", "check_flags",
    "minimal_members", "independence_number", "max_clique",
    "delta_parameter", "is_delta_n_set", "find_delta_system",
    "ramsey_extract", "min_cover", "point_greedy_cover",
    "max_disjoint_translates", "prop2_check",
})

_FAMILY_COMMANDS = frozenset({
    "delta", "delta_simple", "is_recurrent", "recurrence_filter_base",
    "is_left_topological", "prop1_witness_check", "check_flags",
    "minimal_members", "max_disjoint_translates", "prop2_check",
})


@dataclass(frozen=True)
class Job:
    group: GroupTable
    action: ActionTable
    family: Optional[SetFamily]
    sets: dict[str, tuple[int, ...]]
    command: str
    parameters: dict[str, Any]
    normalized: dict


def _need(obj: dict, key: str, kind: type, where: str) -> Any:
    if key not in obj:
        raise ParseError(f"{where}: missing required field {key!r}")
    val = obj[key]
    if kind is int and isinstance(val, bool):
        raise ParseError(f"{where}.{key}: expected an integer, got a boolean")
    if not isinstance(val, kind):
        raise ParseError(
            f"{where}.{key}: expected {kind.__name__}, got {type(val).__name__}"
        )
    return val


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ParseError(f"{where}: unknown field(s) {', '.join(extra)}")


def _int_list(val: Any, where: str) -> list[int]:
    if not isinstance(val, list):
        raise ParseError(f"{where}: expected a list of integers")
    out = []
    for x in val:
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParseError(f"{where}: expected integers, got {x!r}")
        out.append(x)
    return out


def group_from_spec(spec: Any, where: str = "group") -> GroupTable:
    if not isinstance(spec, dict):
        raise ParseError(f"{where}: expected an object")
    kind = _need(spec, "kind", str, where)
    if kind in ("cyclic", "dihedral", "symmetric"):
        _reject_unknown(spec, {"kind", "n"}, where)
        n = _need(spec, "n", int, where)
        builder = {"cyclic": cyclic_group, "dihedral": dihedral_group,
                   "symmetric": symmetric_group}[kind]
        return builder(n)
    if kind == "product":
        _reject_unknown(spec, {"kind", "factors"}, where)
        factors = spec.get("factors")
        if not isinstance(factors, list) or len(factors) < 2:
            raise ParseError(f"{where}.factors: expected a list of at least "
                             f"two group specs")
        group = group_from_spec(factors[0], f"{where}.factors[0]")
        for i, sub in enumerate(factors[1:], start=1):
            group = product_group(group, group_from_spec(sub, f"{where}.factors[{i}]"))
        return group
    if kind == "explicit":
        _reject_unknown(spec, {"kind", "table", "name"}, where)
        table = spec.get("table")
        if not isinstance(table, list):
            raise ParseError(f"{where}.table: expected a list of rows")
        rows = [_int_list(row, f"{where}.table[{i}]") for i, row in enumerate(table)]
        name = spec.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseError(f"{where}.name: expected a string")
        return explicit_group(rows, name=name)
    raise ParseError(f"{where}.kind: unknown group kind {kind!r}")


def _normalize_group_spec(spec: dict) -> dict:
    out = {"kind": spec["kind"]}
    if spec["kind"] in ("cyclic", "dihedral", "symmetric"):
        out["n"] = spec["n"]
    elif spec["kind"] == "product":
        out["factors"] = [_normalize_group_spec(s) for s in spec["factors"]]
    else:
        out["table"] = [list(map(int, row)) for row in spec["table"]]
        if spec.get("name") is not None:
            out["name"] = spec["name"]
    return out


def action_from_spec(spec: Any, group: GroupTable) -> tuple[ActionTable, dict]:
    if spec is None:
        return left_regular_action(group), {"kind": "left_regular"}
    if not isinstance(spec, dict):
        raise ParseError("action: expected an object")
    kind = _need(spec, "kind", str, "action")
    if kind == "left_regular":
        _reject_unknown(spec, {"kind"}, "action")
        return left_regular_action(group), {"kind": "left_regular"}
    if kind == "table":
        _reject_unknown(spec, {"kind", "table", "name"}, "action")
        table = spec.get("table")
        if not isinstance(table, list):
            raise ParseError("action.table: expected a list of rows")
        rows = [_int_list(row, f"action.table[{i}]") for i, row in enumerate(table)]
        name = spec.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseError("action.name: expected a string")
        act = make_action(group, rows, name=name)
        norm = {"kind": "table", "table": [list(map(int, r)) for r in rows]}
        if name is not None:
            norm["name"] = name
        return act, norm
    raise ParseError(f"action.kind: unknown action kind {kind!r}")


def _mask(action: ActionTable, elems: list[int], where: str) -> SubsetMask:
    m = action.size
    for x in elems:
        if not 0 <= x < m:
            raise ParseError(
                f"{where}: element {x} out of range for a point set of size {m}"
            )
    return SubsetMask.from_elements(action.points, elems)


def family_from_spec(spec: Any, action: ActionTable) -> tuple[Optional[SetFamily], Optional[dict]]:
    if spec is None:
        return None, None
    if not isinstance(spec, dict):
        raise ParseError("family: expected an object")
    kind = _need(spec, "kind", str, "family")
    if kind == "all_nonempty":
        _reject_unknown(spec, {"kind"}, "family")
        return all_nonempty_family(action), {"kind": "all_nonempty"}
    if kind == "min_size":
        _reject_unknown(spec, {"kind", "k"}, "family")
        k = _need(spec, "k", int, "family")
        return min_size_family(action, k), {"kind": "min_size", "k": k}
    if kind == "explicit":
        _reject_unknown(
            spec, {"kind", "generators", "upward", "invariant", "excludes_empty"},
            "family",
        )
        gen_spec = spec.get("generators")
        if not isinstance(gen_spec, list) or not gen_spec:
            raise ParseError("family.generators: expected a nonempty list of sets")
        gens = [
            _mask(action, _int_list(g, f"family.generators[{i}]"),
                  f"family.generators[{i}]")
            for i, g in enumerate(gen_spec)
        ]
        upward = spec.get("upward", False)
        invariant = spec.get("invariant", False)
        excludes_empty = spec.get("excludes_empty", True)
        for label, flag in (("upward", upward), ("invariant", invariant),
                            ("excludes_empty", excludes_empty)):
            if not isinstance(flag, bool):
                raise ParseError(f"family.{label}: expected a boolean")
        fam = explicit_family(action, gens, upward=upward, invariant=invariant,
                              excludes_empty=excludes_empty)
        norm = {
            "kind": "explicit",
            "generators": sorted((list(g.elements()) for g in gens),
                                 key=lambda e: (len(e), e)),
            "upward": upward,
            "invariant": invariant,
            "excludes_empty": excludes_empty,
        }
        return fam, norm
    if kind == "positive_measure":
        _reject_unknown(spec, {"kind", "weights"}, "family")
        weights = spec.get("weights")
        if not isinstance(weights, list):
            raise ParseError("family.weights: expected a list of fractions")
        parsed = []
        for i, w in enumerate(weights):
            if isinstance(w, bool) or not isinstance(w, (int, str)):
                raise ParseError(
                    f"family.weights[{i}]: expected an integer or a 'p/q' "
                    f"string, got {w!r}"
                )
            try:
                parsed.append(Fraction(w))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"family.weights[{i}]: {exc}") from exc
        mu = make_measure(action, parsed)
        norm = {"kind": "positive_measure",
                "weights": [fraction_str(w) for w in mu.weights]}
        return positive_family(mu), norm
    raise ParseError(f"family.kind: unknown family kind {kind!r}")


def parse_config(text: str) -> Job:
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("config: expected a JSON object")
    _reject_unknown(
        raw,
        {"schema", "group", "action", "family", "sets", "command", "parameters"},
        "config",
    )
    schema = raw.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ParseError(f"config.schema: expected {CONFIG_SCHEMA!r}, got {schema!r}")
    group = group_from_spec(_need(raw, "group", dict, "config"))
    action, action_norm = action_from_spec(raw.get("action"), group)
    family, family_norm = family_from_spec(raw.get("family"), action)
    sets_spec = raw.get("sets", {})
    if not isinstance(sets_spec, dict):
        raise ParseError("config.sets: expected an object of label -> elements")
    sets: dict[str, tuple[int, ...]] = {}
    for label, elems in sets_spec.items():
        lst = _int_list(elems, f"config.sets[{label!r}]")
        mask = _mask(action, lst, f"config.sets[{label!r}]")
        sets[label] = mask.elements()
    command = _need(raw, "command", str, "config")
    if command not in COMMANDS:
        raise ParseError(f"config.command: unknown command {command!r}")
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        raise ParseError("config.parameters: expected an object")
    normalized: dict[str, Any] = {
        "schema": CONFIG_SCHEMA,
        "group": _normalize_group_spec(raw["group"]),
        "action": action_norm,
        "command": command,
        "sets": {label: list(elems) for label, elems in sorted(sets.items())},
        "parameters": _normalize_params(command, params),
    }
    if family_norm is not None:
        normalized["family"] = family_norm
    return Job(group=group, action=action, family=family, sets=sets,
               command=command, parameters=normalized["parameters"],
               normalized=normalized)


_PARAM_FIELDS: dict[str, dict[str, type]] = {
    "delta": {"a": str, "allow_nonmember": bool},
    "delta_simple": {"a": str},
    "is_recurrent": {"r": str},
    "recurrence_filter_base": {},
    "is_left_topological": {},
    "prop1_witness_check": {},
    "check_flags": {},
    "minimal_members": {},
    "independence_number": {"a": str, "induced": str, "method": str},
    "max_clique": {"a": str, "induced": str, "method": str},
    "delta_parameter": {"a": str},
    "is_delta_n_set": {"a": str, "n": int},
    "find_delta_system": {"a": str, "k": int},
    "ramsey_extract": {"a": str, "y": str},
    "min_cover": {"a": str, "budget": int},
    "point_greedy_cover": {"a": str},
    "max_disjoint_translates": {"a": str},
    "prop2_check": {"a": str},
}

_PARAM_DEFAULTS: dict[str, dict[str, Any]] = {
    "is_recurrent": {"r": "R"},
    "ramsey_extract": {"a": "A", "y": "Y"},
}


def _normalize_params(command: str, params: dict) -> dict:
    fields = _PARAM_FIELDS[command]
    out = dict(_PARAM_DEFAULTS.get(command, {}))
    if "a" in fields:
        out.setdefault("a", "A")
    for key, val in params.items():
        if key not in fields:
            raise ParseError(
                f"config.parameters: {key!r} is not a parameter of {command!r}"
            )
        kind = fields[key]
        if kind is int and isinstance(val, bool) or not isinstance(val, kind):
            raise ParseError(
                f"config.parameters.{key}: expected {kind.__name__}"
            )
        out[key] = val
    if command == "is_delta_n_set" and "n" not in out:
        raise ParseError("config.parameters: is_delta_n_set needs integer 'n'")
    if command == "find_delta_system" and "k" not in out:
        raise ParseError("config.parameters: find_delta_system needs integer 'k'")
    if "method" in out and out["method"] not in ("solver", "oracle"):
        raise ParseError("config.parameters.method: expected 'solver' or 'oracle'")
    return out


def _resolve(job: Job, label: str) -> SubsetMask:
    if label not in job.sets:
        raise ParseError(
            f"undefined set label {label!r}; defined labels: "
            f"{', '.join(sorted(job.sets)) or '(none)'}"
        )
    return SubsetMask.from_elements(job.action.points, job.sets[label])


def _require_family(job: Job) -> SetFamily:
    if job.family is None:
        raise ParseError(f"command {job.command!r} needs a family in the config")
    return job.family


def execute(job: Job) -> tuple[dict, int, bool]:
    """Run the job; returns (result payload, work units, verdict).

    The verdict is False only when a property-check command finds its
    property violated; plain queries always carry True.
    """
    group = job.group
    p = job.parameters

    def sp(mask: SubsetMask) -> dict:
        return set_payload(mask, group)

    if job.command == "delta":
        fam = _require_family(job)
        res = delta(job.action, fam, _resolve(job, p["a"]),
                    allow_nonmember=p.get("allow_nonmember", False))
        payload = {
            "delta": sp(res.set),
            "witnesses": [
                {"g": g, "b": sp(b), "gb": sp(gb)} for g, b, gb in res.witnesses
            ],
        }
        return payload, group.order, True
    if job.command == "delta_simple":
        fam = _require_family(job)
        res = delta_simple(job.action, fam, _resolve(job, p["a"]))
        return {"delta": sp(res)}, group.order, True
    if job.command == "is_recurrent":
        fam = _require_family(job)
        rep = is_recurrent(job.action, fam, _resolve(job, p["r"]))
        payload = {
            "recurrent": rep.recurrent,
            "failing_a": None if rep.failing_a is None else sp(rep.failing_a),
            "checked": rep.checked,
        }
        return payload, rep.checked, True
    if job.command == "recurrence_filter_base":
        fam = _require_family(job)
        fb = recurrence_filter_base(job.action, fam)
        payload = {"generators": [sp(g) for g in fb.generators],
                   "kernel": sp(fb.kernel)}
        return payload, len(fb.generators), True
    if job.command == "is_left_topological":
        fam = _require_family(job)
        fb = recurrence_filter_base(job.action, fam)
        rep = is_left_topological(fb, group)
        payload = {
            "left_topological": rep.left_topological,
            "kernel": sp(rep.kernel),
            "witness": None if rep.witness is None else list(rep.witness),
        }
        return payload, len(fb.generators), rep.left_topological
    if job.command == "prop1_witness_check":
        fam = _require_family(job)
        rep = prop1_witness_check(job.action, fam)
        payload = {
            "holds": rep.holds,
            "mode": rep.mode,
            "members_checked": rep.members_checked,
            "pairs_checked": rep.pairs_checked,
            "failing": None if rep.failing is None else
            {"a": sp(rep.failing[0]), "g": rep.failing[1]},
        }
        return payload, rep.pairs_checked, rep.holds
    if job.command == "check_flags":
        fam = _require_family(job)
        rep = check_flags(fam)
        payload = {
            "upward_closed": rep.upward_closed,
            "invariant": rep.invariant,
            "mode": rep.mode,
            "upward_witness": None if rep.upward_witness is None else
            {"member": sp(rep.upward_witness[0]),
             "superset": sp(rep.upward_witness[1])},
            "invariant_witness": None if rep.invariant_witness is None else
            {"member": sp(rep.invariant_witness[0]),
             "g": rep.invariant_witness[1],
             "translate": sp(rep.invariant_witness[2])},
        }
        return payload, 1, True
    if job.command == "minimal_members":
        fam = _require_family(job)
        mins = minimal_members(fam)
        return {"minimal": [sp(a) for a in mins]}, len(mins), True
    if job.command in ("independence_number", "max_clique"):
        gr = cayley_graph(group, _resolve(job, p["a"]))
        induced = None if "induced" not in p else _resolve(job, p["induced"])
        fn = independence_number if job.command == "independence_number" else max_clique
        res = fn(gr, induced_on=induced, method=p.get("method", "solver"))
        payload = {"size": res.alpha, "witness": sp(res.witness),
                   "node_count": res.node_count}
        return payload, res.node_count, True
    if job.command == "delta_parameter":
        value = delta_parameter(group, _resolve(job, p["a"]))
        return {"delta_parameter": value}, group.order, True
    if job.command == "is_delta_n_set":
        value = is_delta_n_set(group, _resolve(job, p["a"]), p["n"])
        return {"is_delta_n_set": value, "n": p["n"]}, group.order, True
    if job.command == "find_delta_system":
        system = find_delta_system(group, _resolve(job, p["a"]), p["k"])
        payload = {"found": system is not None,
                   "system": None if system is None else list(system)}
        return payload, group.order, True
    if job.command == "ramsey_extract":
        rep = ramsey_extract(group, _resolve(job, p["a"]), _resolve(job, p["y"]))
        payload = {"side": rep.side, "z": sp(rep.z),
                   "clique_size": rep.clique_size,
                   "independent_size": rep.independent_size,
                   "node_count": rep.node_count}
        return payload, rep.node_count, True
    if job.command in ("min_cover", "point_greedy_cover"):
        a = _resolve(job, p["a"])
        if job.command == "min_cover":
            res = min_cover(group, a, budget=p.get("budget"))
        else:
            res = point_greedy_cover(group, a)
        payload = {"cover": sp(res.cover), "size": res.size,
                   "method": res.method, "optimal": res.optimal,
                   "node_count": res.node_count}
        return payload, res.node_count, True
    if job.command == "max_disjoint_translates":
        fam = _require_family(job)
        res = max_disjoint_translates(job.action, fam, _resolve(job, p["a"]))
        payload = {"family_size": res.family_size,
                   "representatives": list(res.representatives),
                   "conflict_graph_alpha": res.conflict_graph_alpha,
                   "node_count": res.node_count}
        return payload, res.node_count, True
    if job.command == "prop2_check":
        fam = _require_family(job)
        rep = prop2_check(job.action, fam, _resolve(job, p["a"]))
        payload = {"equal": rep.equal, "packing": rep.packing,
                   "alpha_of_delta_graph": rep.alpha_of_delta_graph}
        return payload, group.order, rep.equal
    raise ParseError(f"config.command: unknown command {job.command!r}")


def export_edge_list(job: Job) -> str:
    """Edge list text for the Cayley graph of the job's connection set."""
    gr = cayley_graph(job.group, _resolve(job, job.parameters.get("a", "A")))
    return edge_list(gr)
