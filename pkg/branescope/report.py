"""
Report emission for branescope.

Every command returns a plain dict; this module turns it into canonical
JSON (sorted keys, rationals as "p/q") or, for table reports, CSV.
"""
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np
from sympy import Rational

from branescope import hooks
from branescope.exceptions import UsageError


def canonical(value):
    """
    Convert a report value to JSON-ready data.

    Args:
        value: Report value (dicts, sequences, sympy/numpy scalars, objects with as_dict)

    Returns:
        Equivalent structure of dicts, lists, str, int, float and bool
    """
    if hasattr(value, "as_dict"):
        return canonical(value.as_dict())
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (Rational, Fraction)):
        p, q = (int(value.p), int(value.q)) if isinstance(value, Rational) else (value.numerator, value.denominator)
        return p if q == 1 else f"{p}/{q}"
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def render_json(report: dict) -> str:
    return json.dumps(canonical(report), sort_keys=True, indent=2)


def render_csv(report: dict) -> str:
    """
    CSV rendering of a table report.

    Args:
        report: dict whose "kind" is listed in hooks.table_reports

    Returns:
        CSV text with a header row
    """
    kind = report.get("kind")
    if kind not in hooks.table_reports:
        raise UsageError(f"CSV output is available for {', '.join(hooks.table_reports)} only")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")

    if kind == "ext_table":
        writer.writerow(["k", "dim"])
        for k in sorted(report["dims"]):
            writer.writerow([k, report["dims"][k]])
    else:
        writer.writerow(["p", "q", "value"])
        for p, q, value in report["entries"]:
            writer.writerow([p, q, value])

    return buffer.getvalue()


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "csv":
        return render_csv(report)
    return render_json(report)


def emit_report(report: dict, fmt: str = "json", stream=None):
    """
    Write a report to stdout (or the given stream).

    Args:
        report: Report dict
        fmt: "json" or "csv"
        stream: Optional text stream
    """
    text = render(report, fmt)
    stream = stream or sys.stdout
    stream.write(text if text.endswith("\n") else text + "\n")
