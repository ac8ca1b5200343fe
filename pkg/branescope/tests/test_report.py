import io
import json
from fractions import Fraction

import numpy as np
import pytest
from sympy import Rational

from branescope.branes import ExtTable
from branescope.exceptions import UsageError
from branescope.report import canonical, emit_report, render, render_csv, render_json


def test_canonical_values():
    report = {
        "half": Rational(1, 2),
        "whole": Rational(4, 2),
        "third": Fraction(-1, 3),
        "count": np.int64(5),
        "flag": np.bool_(True),
        "z": 1 - 2j,
        "grid": np.array([[1, 2], [3, 4]]),
        2: "int key",
    }
    assert canonical(report) == {
        "half": "1/2",
        "whole": 2,
        "third": "-1/3",
        "count": 5,
        "flag": True,
        "z": [1.0, -2.0],
        "grid": [[1, 2], [3, 4]],
        "2": "int key",
    }


def test_objects_with_as_dict():
    table = ExtTable("0,0,0", "1,1,1", 2, {1: 0, 0: 9}, {0: 0, 1: 9})
    assert canonical(table) == {"a": "0,0,0", "b": "1,1,1", "dims": {"0": 9, "1": 0}}


def test_json_is_canonical():
    text = render_json({"b": 1, "a": [Rational(2, 3)]})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": ["2/3"], "b": 1}


def test_csv_tables():
    ext = {"kind": "ext_table", "a": "0", "b": "1", "dims": {1: 0, 0: 9}}
    assert render_csv(ext) == "k,dim\n0,9\n1,0\n"

    rectangle = {"kind": "rectangle_table", "entries": [[0, 0, 1], [0, 1, 1]]}
    assert render(rectangle, "csv") == "p,q,value\n0,0,1\n0,1,1\n"

    with pytest.raises(UsageError):
        render_csv({"vertices": []})


def test_emit_report():
    stream = io.StringIO()
    emit_report({"kind": "ext_table", "dims": {0: 1}}, "csv", stream)
    assert stream.getvalue() == "k,dim\n0,1\n"

    stream = io.StringIO()
    emit_report({"x": 1}, "json", stream)
    assert stream.getvalue().endswith("}\n")
