# tests/test_serialization.py

import json
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from utils.errors import MalformedJobError
from utils.serialization import (
    SCHEMA,
    convert_to_python_types,
    dump_report,
    format_fraction,
    parse_fraction,
    render_report,
)


def test_fraction_text():
    assert format_fraction(Fraction(3, 8)) == "3/8"
    assert format_fraction(2) == "2/1"
    assert parse_fraction("3/8") == Fraction(3, 8)
    assert parse_fraction(" 5 ") == 5
    assert parse_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("text", ["x", "1/0", "", True])
def test_parse_fraction_rejects_non_rationals(text):
    with pytest.raises(MalformedJobError):
        parse_fraction(text)


def test_convert_nested_values():
    class Boxed:
        def to_json(self):
            return {"value": Fraction(1, 2)}

    payload = {
        1: np.int64(4),
        "f": np.float64(0.5),
        "flag": np.bool_(True),
        "arr": np.array([1, 2]),
        "frame": pd.DataFrame({"a": [1]}),
        "nested": (Boxed(), {Fraction(1, 3)}),
        "inf": float("inf"),
    }
    assert convert_to_python_types(payload) == {
        "1": 4,
        "f": 0.5,
        "flag": True,
        "arr": [1, 2],
        "frame": [{"a": 1}],
        "nested": [{"value": "1/2"}, ["1/3"]],
        "inf": "inf",
    }


def test_report_schema_and_file(tmp_path):
    text = render_report("gale", {"v": 6})
    report = json.loads(text)
    assert report == {"schema": SCHEMA, "command": "gale", "v": 6}
    path = tmp_path / "out.json"
    assert dump_report("gale", {"v": 6}, path) == text
    assert path.read_text(encoding="utf-8") == text
