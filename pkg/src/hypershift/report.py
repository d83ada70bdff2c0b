"""Canonical JSON and plain-text rendering of report dictionaries.

Rationals are written as "p/q" strings (integers as "n") and keys are sorted,
so equal reports serialise to identical bytes.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any, List


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return ", ".join(_scalar(x) for x in v) if v else "(none)"
    return str(v)


def render_human(report: dict) -> str:
    """Indented ``key: value`` lines from the same structure that feeds JSON."""
    lines: List[str] = []

    def walk(obj, indent):
        pad = "  " * indent
        for key in sorted(obj):
            v = obj[key]
            if isinstance(v, dict):
                lines.append(f"{pad}{key}:")
                walk(v, indent + 1)
            elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{key}:")
                for item in v:
                    if isinstance(item, dict):
                        lines.append(f"{pad}  -")
                        walk(item, indent + 2)
                    else:
                        lines.append(f"{pad}  - {_scalar(item)}")
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")

    walk(jsonable(report), 0)
    return "\n".join(lines) + "\n"
