"""Verification reports with a canonical serialized form.

A report records one named check, its status (verified, refuted or
unsupported), the parameters it ran with, the named assumptions it consumed
and a short witness string.  The JSON rendering is byte-stable: reports are
sorted by check name, keys are sorted, and timings are excluded unless
explicitly requested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

SCHEMA_VERSION = 1
STATUSES = ("verified", "refuted", "unsupported")


@dataclass
class Report:
    check: str
    status: str
    params: Dict[str, object] = field(default_factory=dict)
    assumptions: List[str] = field(default_factory=list)
    witness: str = ""
    elapsed_ms: Optional[float] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


def _jsonable(value):
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str):
        return value
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    return str(value)


def report_to_dict(report: Report, timings: bool = False) -> Dict[str, object]:
    out = {
        "check": report.check,
        "status": report.status,
        "params": _jsonable(report.params),
        "assumptions": sorted(report.assumptions),
        "witness": report.witness,
    }
    if timings and report.elapsed_ms is not None:
        out["elapsed_ms"] = report.elapsed_ms
    return out


def render_json(reports: Iterable[Report], timings: bool = False) -> str:
    body = {
        "schema_version": SCHEMA_VERSION,
        "reports": [report_to_dict(r, timings)
                    for r in sorted(reports, key=lambda r: r.check)],
    }
    return json.dumps(body, sort_keys=True, indent=2)


def render_text(reports: Iterable[Report], timings: bool = False) -> str:
    lines = []
    for r in sorted(reports, key=lambda r: r.check):
        mark = {"verified": "ok", "refuted": "FAIL", "unsupported": "SKIP"}[r.status]
        extra = f" [{r.elapsed_ms:.1f} ms]" if timings and r.elapsed_ms is not None else ""
        witness = f" -- {r.witness}" if r.witness else ""
        lines.append(f"{mark:4s} {r.check}{witness}{extra}")
        if r.assumptions:
            lines.append(f"     assumes: {', '.join(sorted(r.assumptions))}")
    return "\n".join(lines)


def exit_code(reports: Iterable[Report]) -> int:
    return 0 if all(r.status == "verified" for r in reports) else 1
