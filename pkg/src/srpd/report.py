"""Report assembly: stable JSON schema and aligned text tables.

Every report carries the same top-level keys -- name, inputs, results,
provenance, discrepancies -- and embeds the modelling conventions so output
files are self-describing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

SCHEMA_VERSION = "1.0"

PROVENANCE = {
    "schema_version": SCHEMA_VERSION,
    "metric_extension": "ambient Euclidean inner product",
    "vertical_space": "Euclidean-orthogonal complement of the horizontal span",
    "bracket_convention": "[X,Y]f = X(Y f) - Y(X f)",
    "arithmetic": "exact rationals; sphere functions in canonical normal form",
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "inputs", "results", "provenance", "discrepancies"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "provenance": {
            "type": "object",
            "required": [
                "schema_version",
                "metric_extension",
                "vertical_space",
                "bracket_convention",
            ],
        },
        "discrepancies": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["fixture", "trust", "reference_value", "computed_value", "status"],
                "properties": {
                    "fixture": {"type": "string"},
                    "trust": {"type": "string"},
                    "reference_value": {},
                    "computed_value": {},
                    "status": {"enum": ["mismatch", "match"]},
                    "note": {"type": "string"},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Discrepancy:
    fixture: str
    trust: str
    reference_value: object
    computed_value: object
    status: str = "mismatch"
    note: str = ""

    def to_json(self) -> dict:
        data = {
            "fixture": self.fixture,
            "trust": self.trust,
            "reference_value": self.reference_value,
            "computed_value": self.computed_value,
            "status": self.status,
        }
        if self.note:
            data["note"] = self.note
        return data


def make_report(
    name: str,
    inputs: dict,
    results: dict,
    discrepancies: list[Discrepancy] | None = None,
) -> dict:
    return {
        "name": name,
        "inputs": inputs,
        "results": results,
        "provenance": dict(PROVENANCE),
        "discrepancies": [d.to_json() for d in (discrepancies or [])],
    }


def to_json_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def render_kv(pairs: list[tuple[str, str]], indent: str = "") -> str:
    if not pairs:
        return ""
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{indent}{k.ljust(width)}  {v}" for k, v in pairs)
