"""Serialization of curves, surfaces and reports: CSV, JSON, and SVG.

Formats are byte-deterministic for fixed inputs:

* CSV -- UTF-8, LF line endings, ``#``-prefixed metadata comment lines,
  17-significant-digit decimal floats (full round-trip precision), header
  ``beta1,beta2,value`` for surfaces or ``beta,brillouin,alternative,difference``
  for curves.
* JSON -- a single object ``{"metadata": ..., ...}``, two-space indent,
  numbers as decimal literals (failed grid points become ``null``, never NaN).
* SVG -- standalone 1.1 document with a fixed 800x600 viewport; the curve
  overlay contains exactly two polyline elements.
"""

from __future__ import annotations

import json
import math

from spinthermo.analysis import SurfaceGrid

__all__ = [
    "format_float",
    "metadata_comments",
    "surface_csv",
    "curve_csv",
    "surface_json",
    "dumps_json",
    "parse_csv",
    "svg_curves",
]


def format_float(x: float) -> str:
    """Full round-trip decimal form (17 significant digits)."""
    return format(float(x), ".17g")


def metadata_comments(meta: dict) -> list[str]:
    """Flatten a metadata mapping into deterministic ``# key: value`` lines."""
    lines = []
    for key, value in meta.items():
        if isinstance(value, dict):
            inner = " ".join(f"{k}={_plain(v)}" for k, v in value.items())
            lines.append(f"# {key}: {inner}")
        else:
            lines.append(f"# {key}: {_plain(value)}")
    return lines


def _plain(value) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_plain(v) for v in value) + "]"
    return str(value)


def surface_csv(grid: SurfaceGrid, meta: dict) -> str:
    """Row-major ``beta1,beta2,value`` table with leading comment metadata."""
    lines = metadata_comments(meta)
    lines.append("beta1,beta2,value")
    a1 = grid.spec.axis1()
    a2 = grid.spec.axis2()
    values = grid.values
    for i1 in range(grid.spec.steps1):
        for i2 in range(grid.spec.steps2):
            v = values[i1 * grid.spec.steps2 + i2]
            lines.append(f"{format_float(a1[i1])},{format_float(a2[i2])},"
                         f"{format_float(v)}")
    return "\n".join(lines) + "\n"


def curve_csv(rows, meta: dict) -> str:
    """``beta,brillouin,alternative,difference`` table for curve triples."""
    lines = metadata_comments(meta)
    lines.append("beta,brillouin,alternative,difference")
    for beta, brill, alt in rows:
        lines.append(f"{format_float(beta)},{format_float(brill)},"
                     f"{format_float(alt)},{format_float(brill - alt)}")
    return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def dumps_json(obj) -> str:
    """Deterministic JSON document text (two-space indent, trailing newline)."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def surface_json(grid: SurfaceGrid, meta: dict) -> str:
    spec = grid.spec
    obj = {
        "metadata": meta,
        "spec": {
            "min1": spec.min1, "max1": spec.max1, "steps1": spec.steps1,
            "min2": spec.min2, "max2": spec.max2, "steps2": spec.steps2,
        },
        "model": grid.model,
        "quantity": grid.quantity,
        "values": [_jsonable(float(v)) for v in grid.values],
    }
    if grid.errors is not None:
        obj["errors"] = [_jsonable(float(e)) for e in grid.errors]
    if grid.failures:
        obj["failures"] = list(grid.failures)
    return dumps_json(obj)


def parse_csv(text: str):
    """Split CSV text into (comment lines, header, float rows)."""
    comments: list[str] = []
    header = None
    rows: list[list[float]] = []
    for line in text.splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif header is None:
            header = line
        elif line:
            rows.append([float(tok) for tok in line.split(",")])
    return comments, header, rows


# --- SVG curve overlay -------------------------------------------------------

_SVG_W, _SVG_H = 800, 600
_MARGIN = 70.0


def _px(value: float, lo: float, hi: float, out_lo: float, out_hi: float) -> float:
    return out_lo + (value - lo) / (hi - lo) * (out_hi - out_lo)


def svg_curves(rows) -> str:
    """Overlay plot of the two magnetization laws as a standalone SVG.

    Exactly two polyline elements (one per curve); axes drawn with line
    elements; axis labels are the Unicode strings for beta and the negated
    expected energy.
    """
    betas = [r[0] for r in rows]
    xlo, xhi = min(betas), max(betas)
    ylo, yhi = -1.05, 1.05
    px_l, px_r = _MARGIN, _SVG_W - _MARGIN
    px_b, px_t = _SVG_H - _MARGIN, _MARGIN

    def points(idx: int) -> str:
        return " ".join(
            f"{_px(r[0], xlo, xhi, px_l, px_r):.2f},"
            f"{_px(r[idx], ylo, yhi, px_b, px_t):.2f}"
            for r in rows)

    x0 = _px(0.0, xlo, xhi, px_l, px_r) if xlo < 0.0 < xhi else px_l
    y0 = _px(0.0, ylo, yhi, px_b, px_t)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SVG_W}" height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect x="0" y="0" width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<line x1="{px_l:.2f}" y1="{y0:.2f}" x2="{px_r:.2f}" y2="{y0:.2f}" '
        f'stroke="black" stroke-width="1"/>',
        f'<line x1="{x0:.2f}" y1="{px_b:.2f}" x2="{x0:.2f}" y2="{px_t:.2f}" '
        f'stroke="black" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="2" '
        f'points="{points(1)}"/>',
        f'<polyline fill="none" stroke="#d62728" stroke-width="2" '
        f'points="{points(2)}"/>',
        f'<text x="{px_r - 10:.2f}" y="{y0 - 10:.2f}" font-size="20" '
        f'font-family="sans-serif">β</text>',
        f'<text x="{x0 + 10:.2f}" y="{px_t + 5:.2f}" font-size="20" '
        f'font-family="sans-serif">−E</text>',
        f'<line x1="{px_l + 10:.2f}" y1="{px_t + 10:.2f}" '
        f'x2="{px_l + 40:.2f}" y2="{px_t + 10:.2f}" stroke="#1f77b4" '
        f'stroke-width="2"/>',
        f'<text x="{px_l + 46:.2f}" y="{px_t + 15:.2f}" font-size="14" '
        f'font-family="sans-serif">brillouin</text>',
        f'<line x1="{px_l + 10:.2f}" y1="{px_t + 30:.2f}" '
        f'x2="{px_l + 40:.2f}" y2="{px_t + 30:.2f}" stroke="#d62728" '
        f'stroke-width="2"/>',
        f'<text x="{px_l + 46:.2f}" y="{px_t + 35:.2f}" font-size="14" '
        f'font-family="sans-serif">alternative</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
