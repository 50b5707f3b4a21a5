"""JSON and CSV serialization of verification artifacts.

JSON keeps insertion order and ends with a newline.  CSV rows follow

    K,R,estimate,bound,ratio,witness_z_re,witness_z_im,witness_w_re,witness_w_im,violated

with floats written by ``repr`` so that reading and re-emitting a file
reproduces it byte for byte.
"""
import csv
import io
import json
import math

import numpy as np

from . import geometry
from .verify import HolderReport, ConstantsTable, sharp_constant

CSV_COLUMNS = ("K", "R", "estimate", "bound", "ratio", "witness_z_re", "witness_z_im",
               "witness_w_re", "witness_w_im", "violated")


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (HolderReport, ConstantsTable)):
        return _plain(obj.as_dict())
    return obj


def to_json(obj):
    return json.dumps(_plain(obj), indent=2, ensure_ascii=False) + "\n"


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def report_row(report):
    z, w = report.witness
    return {"K": report.K, "R": report.R, "estimate": report.constant_estimate,
            "bound": report.bound, "ratio": report.ratio,
            "witness_z_re": z.real, "witness_z_im": z.imag,
            "witness_w_re": w.real, "witness_w_im": w.imag,
            "violated": bool(report.violation)}


def sweep_rows(Ks, Rs):
    """Closed-form quotient at the slit endpoints over a (K, R) grid."""
    rows = []
    for K in Ks:
        for R in Rs:
            p = geometry.ExtremalParams(K, R)
            x = geometry.slit_preimage_endpoint(p)
            q = geometry.extremal_quotient(p)
            bound = sharp_constant(K)
            rows.append({"K": float(K), "R": float(R), "estimate": q, "bound": bound,
                         "ratio": q / bound, "witness_z_re": x, "witness_z_im": 0.0,
                         "witness_w_re": -x, "witness_w_im": 0.0,
                         "violated": bool(q > bound * (1 + 1e-6))})
    return rows


def to_csv(rows):
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row[c]) for c in CSV_COLUMNS) + "\n")
    return buf.getvalue()


def read_csv(text):
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for c in CSV_COLUMNS:
            v = rec[c]
            if c == "violated":
                row[c] = v == "true"
            else:
                row[c] = None if v == "" else float(v)
        rows.append(row)
    return rows


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def emit(report, fmt, path=None):
    """Serialize ``report`` as JSON or CSV; write to ``path`` or return the text.

    CSV accepts a HolderReport or a list of CSV row dicts.
    """
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        if isinstance(report, HolderReport):
            rows = [report_row(report)]
        else:
            rows = list(report)
        text = to_csv(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        write_text(path, text)
    return text
