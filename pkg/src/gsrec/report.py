"""Canonical JSON reports.

Every tool output is a versioned JSON document rendered with sorted keys
and fixed separators, so equal payloads are byte-identical.  Sets are
reported as sorted zero-based element indices; for symmetric groups each
element also carries its cycle notation.  Timing is reported as
deterministic work counters (solver nodes, scan steps), never wall-clock.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .algebra import GroupTable, SubsetMask, cycle_notation, permutation_of_index

SCHEMA = "gsrec-report/1"
DEFAULT_SEED = 7


def canonical_json(payload: Any) -> str:
    """The one serialization used everywhere: sorted keys, tight
    separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False) + "\n"


def set_payload(mask: SubsetMask, group: Optional[GroupTable] = None) -> dict:
    """A set as sorted indices, with cycle annotations on symmetric groups."""
    elements = list(mask.elements())
    out: dict[str, Any] = {"elements": elements}
    if group is not None and group.kind == "symmetric":
        out["cycles"] = [
            cycle_notation(permutation_of_index(group, x)) for x in elements
        ]
    return out


def group_payload(group: GroupTable) -> dict:
    return {"name": group.name, "kind": group.kind, "order": group.order}


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def make_report(command: str, result: Any, *, inputs: Any,
                work_units: int, seed: int = DEFAULT_SEED) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "seed": seed,
        "command": command,
        "inputs": inputs,
        "result": result,
        "timing": {"mode": "deterministic", "work_units": work_units},
    }
