"""Canonical JSON and CSV emitters for report objects.

JSON is the canonical format (nested reports need structure); CSV is a
row-oriented projection.  Output bytes are deterministic: keys sorted,
floats via repr, no timestamps unless explicitly enabled upstream.
"""

from __future__ import annotations

import csv
import io
import json

__all__ = [
    "dumps_canonical",
    "resonances_to_csv",
    "transform_sample_to_csv",
    "continuations_to_csv",
    "arc_probe_to_csv",
]


def _float_repr(x) -> str:
    return repr(float(x))


def dumps_canonical(payload) -> str:
    """Deterministic JSON text for a jsonable payload."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def resonances_to_csv(resonances) -> str:
    """Columns: re_k, im_k, re_E, im_E, which_jost, residual, quadrant."""
    rows = []
    for r in resonances:
        d = r.to_dict() if hasattr(r, "to_dict") else r
        rows.append([
            _float_repr(d["re_k"]), _float_repr(d["im_k"]),
            _float_repr(d["re_E"]), _float_repr(d["im_E"]),
            d["which_jost"], _float_repr(d["residual"]),
            d["quadrant"] if d["quadrant"] is not None else "",
        ])
    return _write_rows(
        ["re_k", "im_k", "re_E", "im_E", "which_jost", "residual", "quadrant"], rows
    )


def transform_sample_to_csv(sample) -> str:
    """Columns: E, re, im, abs, quad_err."""
    rows = []
    for e, v, err in zip(sample.energies, sample.values, sample.quadrature_error):
        rows.append([
            _float_repr(e), _float_repr(v.real), _float_repr(v.imag),
            _float_repr(abs(v)), _float_repr(err),
        ])
    return _write_rows(["E", "re", "im", "abs", "quad_err"], rows)


def continuations_to_csv(reports) -> str:
    """Columns: re_k, im_k, re, im, abs, quad_err, nearest_zero_distance."""
    rows = []
    for rep in reports:
        rows.append([
            _float_repr(rep.k.real), _float_repr(rep.k.imag),
            _float_repr(rep.value.real), _float_repr(rep.value.imag),
            _float_repr(abs(rep.value)), _float_repr(rep.integral_error),
            "" if rep.nearest_zero_distance is None
            else _float_repr(rep.nearest_zero_distance),
        ])
    return _write_rows(
        ["re_k", "im_k", "re", "im", "abs", "quad_err", "nearest_zero_distance"], rows
    )


def arc_probe_to_csv(report) -> str:
    """Columns: radius, magnitude (plot-ready)."""
    rows = [
        [_float_repr(r), _float_repr(m)]
        for r, m in zip(report.radii, report.magnitudes)
    ]
    return _write_rows(["radius", "magnitude"], rows)
