"""Plain-text, CSV and JSON emission of curves, tables and single results.

All writers are deterministic: no timestamps, and floats in machine-readable
formats are printed with their shortest round-trip repr so that parsing
restores the exact in-memory values. Each file carries the seed, B, distribution and
package version needed to regenerate it.
"""

import csv
import io
import json
import math

from . import __version__
from .calibration import CalibrationCell, CalibrationTable, NaReason, describe_moments
from .curves import CurveKind, CurvePoint, StandardCurve
from .distributions import parse_spec
from .special import chisq1_sf

__all__ = [
    "format_float",
    "curve_to_csv",
    "curve_to_json",
    "curve_to_text",
    "parse_curve_csv",
    "table_to_csv",
    "table_to_json",
    "table_to_text",
    "parse_table_csv",
    "elr_to_dict",
    "to_json",
    "read_data_file",
    "DataFileError",
]

NA = "NA"
CURVE_COLUMNS = (
    "kind", "family", "params", "fixed_value", "abscissa", "alpha_hat", "std_error",
    "zhang_prediction", "nominal_coverage", "realized_coverage",
)


def format_float(x):
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def _json_safe(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return format_float(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def to_json(doc):
    """Strict JSON: infinities become the strings "inf"/"-inf", NaN is an error."""
    return json.dumps(_json_safe(doc), indent=2, allow_nan=False) + "\n"


def _opt_float(s):
    return None if s in ("", NA) else float(s)


def _params_text(spec):
    return ";".join(format_float(p) for p in spec.params)


# -- curves ---------------------------------------------------------------


def _curve_meta(curve):
    meta = {
        "elcal": __version__,
        "spec": curve.spec.label,
        "kind": curve.kind.value,
        "fixed_value": format_float(curve.fixed_value),
        "B": str(curve.B),
        "seed": str(curve.seed),
    }
    if curve.seeds:
        meta["batch_seeds"] = ";".join(str(s) for s in curve.seeds)
    if curve.hull_violation_rate is not None:
        meta["hull_violation_rate"] = format_float(curve.hull_violation_rate)
    return meta


def _curve_rows(curve):
    for p in curve.points:
        cov = curve.kind is CurveKind.VS_NOMINAL_LEVEL
        yield {
            "kind": curve.kind.value,
            "family": curve.spec.family.value,
            "params": _params_text(curve.spec),
            "fixed_value": curve.fixed_value,
            "abscissa": p.abscissa,
            "alpha_hat": p.alpha_hat,
            "std_error": p.std_error,
            "zhang_prediction": p.zhang_prediction,
            "nominal_coverage": 1.0 - p.abscissa if cov else None,
            "realized_coverage": 1.0 - p.alpha_hat if cov else None,
        }


def curve_to_csv(curve):
    """CSV with ``# key=value`` metadata lines first (gnuplot skips them)."""
    buf = io.StringIO()
    for k, v in _curve_meta(curve).items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_COLUMNS)
    for row in _curve_rows(curve):
        w.writerow([v if isinstance(v, str) else format_float(v) for v in row.values()])
    return buf.getvalue()


def curve_to_json(curve):
    doc = {"metadata": _curve_meta(curve), "points": list(_curve_rows(curve))}
    return to_json(doc)


def curve_to_text(curve):
    lines = [f"# {k}={v}" for k, v in _curve_meta(curve).items()]
    head = "n" if curve.kind is not CurveKind.VS_NOMINAL_LEVEL else "alpha"
    ylab = "n|a_hat-a|" if curve.kind is CurveKind.SCALED_DEVIATION else "alpha_hat"
    lines.append(f"{head:>8} {ylab:>11} {'std_error':>10} {'zhang':>9}")
    for p in curve.points:
        z = "" if p.zhang_prediction is None else f"{p.zhang_prediction:.5f}"
        x = f"{p.abscissa:g}"
        lines.append(f"{x:>8} {p.alpha_hat:>11.5f} {p.std_error:>10.5f} {z:>9}")
    return "\n".join(lines) + "\n"


def parse_curve_csv(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k] = v
        elif line.strip():
            body.append(line)
    rows = list(csv.DictReader(body))
    spec = parse_spec(meta["spec"])
    pts = tuple(
        CurvePoint(float(r["abscissa"]), float(r["alpha_hat"]), float(r["std_error"]),
                   _opt_float(r["zhang_prediction"]))
        for r in rows
    )
    hv = meta.get("hull_violation_rate")
    seeds = tuple(int(s) for s in meta["batch_seeds"].split(";")) if meta.get("batch_seeds") else ()
    return StandardCurve(CurveKind(meta["kind"]), float(meta["fixed_value"]), spec, pts,
                         int(meta["B"]), int(meta["seed"]), None if hv is None else float(hv), seeds)


# -- tables ---------------------------------------------------------------


def _table_meta(table):
    meta = {
        "elcal": __version__,
        "spec": table.spec.label,
        "B": str(table.B),
        "seed": str(table.seed),
        "offset": format_float(table.conservative_offset),
    }
    for k, v in describe_moments(table.spec).items():
        meta[k] = "undefined" if v is None else (str(v).lower() if isinstance(v, bool) else format_float(v))
    return meta


def _cov_label(c):
    return repr(float(c))


def table_to_csv(table):
    """Rows n, columns ``1 - alpha``, literal NA; metadata footer."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [_cov_label(c) for c in table.coverage_list])
    for n, row in zip(table.n_list, table.cells):
        w.writerow([n] + [NA if c.is_na else format_float(c.critical_value) for c in row])
    for k, v in _table_meta(table).items():
        buf.write(f"# {k}={v}\n")
    return buf.getvalue()


def _cell_dict(cell, coverage):
    br = None
    if cell.bracket is not None:
        (x1, h1), (x2, h2) = cell.bracket
        br = {"nominal_1": x1, "alpha_hat_1": h1, "nominal_2": x2, "alpha_hat_2": h2}
    return {
        "n": cell.n,
        "coverage": coverage,
        "target_alpha": cell.target_alpha,
        "alpha_approx": cell.alpha_approx,
        "critical_value": cell.critical_value,
        "na_reason": cell.na_reason.value,
        "bracket": br,
    }


def table_to_json(table):
    doc = {
        "metadata": _table_meta(table),
        "cells": [_cell_dict(c, cov) for row in table.cells for c, cov in zip(row, table.coverage_list)],
    }
    return to_json(doc)


def table_to_text(table, digits=3):
    """Aligned layout with ``n \\ 1-alpha`` in the corner."""
    corner = "n \\ 1-alpha"
    cols = [f"{c:g}" for c in table.coverage_list]
    body = [[NA if c.is_na else f"{c.critical_value:.{digits}f}" for c in row] for row in table.cells]
    width = max([len(x) for r in body for x in r] + [len(c) for c in cols])
    first = max(len(corner), max(len(str(n)) for n in table.n_list))
    lines = [corner.ljust(first) + " | " + " ".join(c.rjust(width) for c in cols)]
    lines.append("-" * len(lines[0]))
    for n, r in zip(table.n_list, body):
        lines.append(str(n).ljust(first) + " | " + " ".join(x.rjust(width) for x in r))
    lines.append("")
    lines.extend(f"# {k}={v}" for k, v in _table_meta(table).items())
    return "\n".join(lines) + "\n"


def parse_table_csv(text):
    """Inverse of :func:`table_to_csv`.

    Only critical values and NA status survive the round trip; NA cells come
    back with reason ``BRACKET_MISSING`` unless the value was finite.
    """
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k] = v
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    coverages = tuple(float(c) for c in rows[0][1:])
    n_list, cells = [], []
    for r in rows[1:]:
        n = int(r[0])
        n_list.append(n)
        row = []
        for c, v in zip(coverages, r[1:]):
            if v == NA:
                row.append(CalibrationCell(n, 1.0 - c, None, None, NaReason.BRACKET_MISSING))
            else:
                row.append(CalibrationCell(n, 1.0 - c, None, float(v)))
        cells.append(tuple(row))
    return CalibrationTable(parse_spec(meta["spec"]), tuple(n_list), coverages, tuple(cells),
                            int(meta["B"]), int(meta["seed"]), float(meta["offset"]))


# -- single statistic -----------------------------------------------------


class DataFileError(ValueError):
    def __init__(self, path, lineno, reason):
        self.path, self.lineno = path, lineno
        super().__init__(f"{path}:{lineno}: {reason}")


def read_data_file(path):
    """One number per line; blank lines and ``#`` comments are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                v = float(s)
            except ValueError:
                raise DataFileError(path, lineno, f"not a number: {s!r}") from None
            if not math.isfinite(v):
                raise DataFileError(path, lineno, f"non-finite value: {s!r}")
            values.append(v)
    if not values:
        raise DataFileError(path, 0, "no data")
    return values


def elr_to_dict(result, n, mu0):
    return {
        "n": n,
        "mu0": mu0,
        "statistic": result.statistic,
        "lambda": None if math.isnan(result.lam) else result.lam,
        "status": result.status.value,
        "p_value": chisq1_sf(result.statistic),
    }
