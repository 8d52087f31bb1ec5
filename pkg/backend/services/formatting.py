from __future__ import annotations

import json
from typing import List, Sequence

import pandas as pd

from .verification import VerificationResult, results_frame


def render_json(payload: object) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _scalar(value: object) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return " ".join(_scalar(v) for v in value) if value else "(none)"
    return str(value)


def _lines(payload: object, indent: int) -> List[str]:
    pad = "  " * indent
    if isinstance(payload, dict):
        out: List[str] = []
        for key, value in payload.items():
            # groups print as their pretty form
            if isinstance(value, dict) and "pretty" in value:
                out.append(f"{pad}{key}: {value['pretty']}")
            elif isinstance(value, dict) or (isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)):
                out.append(f"{pad}{key}:")
                out.extend(_lines(value, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(value)}")
        return out
    if isinstance(payload, list):
        out = []
        for item in payload:
            if isinstance(item, (dict, list)) and not (isinstance(item, list) and all(not isinstance(v, (dict, list)) for v in item)):
                out.append(f"{pad}-")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
        return out
    return [f"{pad}{_scalar(payload)}"]


def render_text(payload: object) -> str:
    return "\n".join(_lines(payload, 0))


def render_results(results: Sequence[VerificationResult]) -> str:
    frame = results_frame(results)
    if frame.empty:
        return "No checks run."
    status = [
        "PASS" if passed else ("FAIL" if asserted else "REPORT")
        for passed, asserted in zip(frame["passed"], frame["asserted"])
    ]
    table = pd.DataFrame({"check": frame["name"], "status": status, "anchor": frame["anchor"]})
    failures = [r for r in results if not r.passed]
    lines = [table.to_string(index=False)]
    for result in failures:
        lines.append("")
        lines.append(f"{result.name} ({result.anchor})")
        if result.error:
            lines.append(f"  error: {result.error}")
        else:
            lines.append(f"  expected: {result.expected}")
            lines.append(f"  computed: {result.computed}")
    passed = sum(1 for r in results if r.passed)
    lines.append("")
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
