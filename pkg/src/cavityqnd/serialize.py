"""Byte-stable CSV and JSON emission (12 significant digits, LF, UTF-8)."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

SIG_DIGITS = 12


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{SIG_DIGITS}g")


def _round(x: float) -> float:
    if not math.isfinite(x):
        return x
    return float(format(x, f".{SIG_DIGITS}g"))


def jsonable(obj):
    """Convert reports, arrays and complex numbers to plain rounded JSON types."""
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _round(obj.real), "im": _round(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    return obj


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


# --- fixed schemas -----------------------------------------------------------

ROC_COLUMNS = ("n_probe", "chi", "epsilon", "cutoff", "overlap_sq", "max_success_bound", "success")


def qgrid_csv(grid) -> str:
    """Long format, y outer and x inner (row-major over ``values[iy, ix]``)."""
    rows = (
        (x, y, grid.values[iy, ix])
        for iy, y in enumerate(grid.y_axis)
        for ix, x in enumerate(grid.x_axis)
    )
    return csv_text(("re_alpha", "im_alpha", "q"), rows)


def quadrature_csv(x_axis, **densities) -> str:
    names = list(densities)
    cols = [densities[n] for n in names]
    rows = (tuple([x] + [c[i] for c in cols]) for i, x in enumerate(x_axis))
    return csv_text(["x"] + names, rows)


def profile_csv(profile) -> str:
    rows = zip(profile.photon_numbers, profile.phi, profile.theta)
    return csv_text(("n", "phi_n", "theta_n"), rows)


def roc_csv(reports) -> str:
    rows = ([getattr(r, c) for c in ROC_COLUMNS] for r in reports)
    return csv_text(ROC_COLUMNS, rows)


def table_csv(columns, rows) -> str:
    """Rows given as dicts keyed by ``columns``."""
    return csv_text(columns, ([r[c] for c in columns] for r in rows))
