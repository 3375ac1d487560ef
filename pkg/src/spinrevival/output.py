"""CSV time-series files and minimal SVG line plots."""

import csv
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .config import COLUMNS
from .errors import ConfigError

HEADER = ",".join(COLUMNS)
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#000000", "#9467bd", "#ff7f0e")


def _fmt(x):
    return f"{x:.12g}"


def write_csv(series, path):
    """Write the fixed column set, one row per time point."""
    if len(series) == 0:
        raise ValueError("cannot write an empty series")
    cols = [np.asarray(series[c], dtype=float) for c in COLUMNS]
    lines = [HEADER]
    lines += [",".join(_fmt(v) for v in row) for row in zip(*cols)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path):
    """Inverse of :func:`write_csv`; returns a ``TimeSeries``."""
    from .scenario import TimeSeries

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return TimeSeries({name: data[:, i] for i, name in enumerate(header)},
                      name=Path(path).stem)


def _nice_ticks(lo, hi, target=6):
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    return [first + k * step for k in range(int((hi - first) / step + 1e-9) + 1)]


def render_plot(series, columns, path, width=800, height=420, title=None):
    """Write a self-contained SVG with one polyline per column against ``t``."""
    columns = list(columns)
    if not columns:
        raise ConfigError("columns", "at least one column is required")
    for c in columns:
        if c == "t" or c not in series.columns:
            raise ConfigError("columns", f"unknown column {c!r}")

    t = np.asarray(series["t"], dtype=float)
    ys = [np.asarray(series[c], dtype=float) for c in columns]
    finite = np.concatenate([y[np.isfinite(y)] for y in ys] + [np.zeros(0)])
    y_lo = min(0.0, float(finite.min())) if finite.size else 0.0
    y_hi = max(1.0, float(finite.max())) if finite.size else 1.0
    x_lo, x_hi = float(t.min()), float(t.max())
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0

    left, right, top, bottom = 60, 150, 30 if title else 15, 45
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y):
        return top + (y_hi - y) / (y_hi - y_lo) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{left + pw / 2:.1f}" y="18" text-anchor="middle">'
                   f'{escape(title)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="black"/>')
    for x in _nice_ticks(x_lo, x_hi):
        px = sx(x)
        out.append(f'<line class="xtick" x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" '
                   f'y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{top + ph + 18}" text-anchor="middle">{x:g}</text>')
    for y in _nice_ticks(y_lo, y_hi, 5):
        py = sy(y)
        out.append(f'<line class="ytick" x1="{left - 5}" y1="{py:.2f}" x2="{left}" '
                   f'y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end">{y:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 8}" text-anchor="middle">t</text>')

    for k, (name, y) in enumerate(zip(columns, ys)):
        color = PALETTE[k % len(PALETTE)]
        yy = np.where(np.isfinite(y), y, y_lo)
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(t, yy))
        out.append(f'<polyline data-column="{escape(name)}" fill="none" stroke="{color}" '
                   f'stroke-width="1" points="{pts}"/>')
        ly = top + 15 + 18 * k
        out.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{left + pw + 36}" y="{ly}">{escape(name)}</text>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


def write_basin_csv(r, chi, tau, path):
    """Basin scan as ``r,chi,re_a,im_a,tangle`` rows (``chi`` fastest)."""
    lines = ["r,chi,re_a,im_a,tangle"]
    for i, rv in enumerate(r):
        for j, cv in enumerate(chi):
            a = rv * complex(math.cos(cv), math.sin(cv))
            lines.append(",".join(_fmt(v) for v in (rv, cv, a.real, a.imag, tau[i, j])))
    Path(path).write_text("\n".join(lines) + "\n")
