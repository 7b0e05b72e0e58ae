"""
serialization.py
Purpose: turn library results into deterministic, JSON-ready Python values.
Pseudocode:
1) Walk dicts/lists/tuples recursively.
2) Fractions become "num/den" strings, numpy scalars/arrays become Python values.
3) Objects exposing `to_json()` serialize themselves.
4) dump_report stamps the schema tag and writes stable JSON.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd

from utils.errors import MalformedJobError

SCHEMA = "sset-kit/1"


def format_fraction(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Parse "n", "n/d" (or an int/Fraction) into an exact Fraction."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedJobError(f"not an exact rational: {text!r}") from exc


def convert_to_python_types(obj):
    """
    Recursively convert Fractions, NumPy/Pandas objects and library values
    to native JSON types.
    """
    # pandas objects also expose to_json (returning a string)
    if isinstance(obj, pd.DataFrame):
        return convert_to_python_types(obj.to_dict(orient="records"))
    if hasattr(obj, "to_json") and callable(obj.to_json):
        return convert_to_python_types(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): convert_to_python_types(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [convert_to_python_types(item) for item in obj]
    elif isinstance(obj, (set, frozenset)):
        return [convert_to_python_types(item) for item in sorted(obj)]
    elif isinstance(obj, bool):
        return obj
    elif isinstance(obj, Fraction):
        return format_fraction(obj)
    elif isinstance(obj, np.bool_):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, np.floating):
        return float(obj)
    elif isinstance(obj, np.ndarray):
        return [convert_to_python_types(v) for v in obj.tolist()]
    elif isinstance(obj, float) and obj == float("inf"):
        return "inf"
    else:
        return obj


def render_report(command: str, payload: dict) -> str:
    report = {"schema": SCHEMA, "command": command}
    report.update(convert_to_python_types(payload))
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def dump_report(command: str, payload: dict, output: str | Path | None = None) -> str:
    """Render the report; write it to `output` when given. Returns the text."""
    text = render_report(command, payload)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    return text
