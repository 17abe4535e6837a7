"""JSON and CSV output for simulation reports."""

from __future__ import annotations

import csv
import io
import json

from .harness import SimReport

CSV_COLUMNS = ("scheme", "dist", "a", "b", "n", "m", "trials", "fer", "undetected",
               "leak_alice", "leak_total", "efficiency", "effective_rate", "seed")


def dumps(obj) -> str:
    """Stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def csv_row(r: SimReport) -> dict:
    d = r.distribution
    px0 = d["p00"] + d["p01"]
    px1 = d["p10"] + d["p11"]
    return {
        "scheme": r.scheme, "dist": r.dist,
        "a": repr(d["p01"] / px0) if px0 > 0 else "",
        "b": repr(d["p10"] / px1) if px1 > 0 else "",
        "n": r.n, "m": "" if r.m is None else r.m, "trials": r.trials,
        "fer": repr(r.fer), "undetected": r.undetected,
        "leak_alice": repr(r.mean_leak_alice), "leak_total": repr(r.mean_leak_total),
        "efficiency": "" if r.efficiency is None else repr(r.efficiency),
        "effective_rate": "" if r.effective_rate is None else repr(r.effective_rate),
        "seed": r.seed,
    }


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(csv_row(r))
    return buf.getvalue()
