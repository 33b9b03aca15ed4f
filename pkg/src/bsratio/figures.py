"""Deterministic SVG emitters for the scatter and histogram views.

Hand-rolled SVG with fixed formatting: the same input file always produces
byte-identical output, which plotting libraries do not guarantee.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import SchemaError
from .pipeline import StatsRow, load_rows

WIDTH, HEIGHT = 960, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 20, 50

PLOT_W = WIDTH - MARGIN_L - MARGIN_R
PLOT_H = HEIGHT - MARGIN_T - MARGIN_B

POINT_COLOR = "#2a6f97"
HIGHLIGHT_COLOR = "#d62828"
MEAN_COLOR = "#d62828"
TOTAL_COLOR = "#69a2c9"
P1_COLOR = "#4f9d4f"
M1_COLOR = "#e8c83d"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _svg_open(parts: list[str]) -> None:
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    parts.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')


def _frame(parts: list[str]) -> None:
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{PLOT_W}" height="{PLOT_H}" '
        'fill="none" stroke="#333333" stroke-width="1"/>'
    )


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _axes(parts: list[str], xlo, xhi, ylo, yhi, xlabel: str, ylabel: str) -> None:
    for tx in _ticks(xlo, xhi):
        px = MARGIN_L + (tx - xlo) / (xhi - xlo) * PLOT_W if xhi > xlo else MARGIN_L
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{MARGIN_T + PLOT_H}" x2="{_fmt(px)}" '
            f'y2="{MARGIN_T + PLOT_H + 5}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{MARGIN_T + PLOT_H + 20}" font-family="monospace" '
            f'font-size="11" text-anchor="middle">{tx:.4g}</text>'
        )
    for ty in _ticks(ylo, yhi):
        py = MARGIN_T + PLOT_H - (ty - ylo) / (yhi - ylo) * PLOT_H if yhi > ylo else MARGIN_T
        parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" y2="{_fmt(py)}" '
            'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 4)}" font-family="monospace" '
            f'font-size="11" text-anchor="end">{ty:.4g}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + PLOT_W / 2:.1f}" y="{HEIGHT - 12}" font-family="monospace" '
        f'font-size="12" text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_T + PLOT_H / 2:.1f}" font-family="monospace" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 16 {MARGIN_T + PLOT_H / 2:.1f})">{ylabel}</text>'
    )


def _values(rows: list[StatsRow], normalized: bool) -> np.ndarray:
    return np.array([row.R_norm if normalized else row.R for row in rows])


def mean_line_y(values: np.ndarray, ylo: float, yhi: float) -> float:
    """Pixel y of the horizontal mean line; exposed for parse-back checks."""
    mean = float(np.mean(values))
    return MARGIN_T + PLOT_H - (mean - ylo) / (yhi - ylo) * PLOT_H


def scatter_scale(rows: list[StatsRow], normalized: bool) -> tuple[float, float, float, float]:
    values = _values(rows, normalized)
    qs = np.array([row.q for row in rows])
    xlo, xhi = 0.0, float(qs.max()) * 1.02
    ylo, yhi = 0.0, float(values.max()) * 1.05
    return xlo, xhi, ylo, yhi


def plot_scatter(in_path: str | os.PathLike, normalized: bool, out_path: str | os.PathLike) -> None:
    """Scatter of (q, R) or (q, R (log q)^0.75) with a dashed mean line.

    The q=3 point, when present, is drawn enlarged in red (it carries the
    maximal R by a wide margin).
    """
    rows = load_rows(in_path)
    if not rows:
        raise SchemaError(f"{in_path}: no data rows")
    values = _values(rows, normalized)
    xlo, xhi, ylo, yhi = scatter_scale(rows, normalized)

    parts: list[str] = []
    _svg_open(parts)
    _frame(parts)
    ylabel = "R(q) (log q)^(3/4)" if normalized else "R(q)"
    _axes(parts, xlo, xhi, ylo, yhi, "q", ylabel)

    my = mean_line_y(values, ylo, yhi)
    parts.append(
        f'<line class="mean" x1="{MARGIN_L}" y1="{_fmt(my)}" x2="{MARGIN_L + PLOT_W}" '
        f'y2="{_fmt(my)}" stroke="{MEAN_COLOR}" stroke-width="1.5" stroke-dasharray="6,4"/>'
    )
    for row, v in zip(rows, values):
        px = MARGIN_L + (row.q - xlo) / (xhi - xlo) * PLOT_W
        py = MARGIN_T + PLOT_H - (v - ylo) / (yhi - ylo) * PLOT_H
        if row.q == 3:
            parts.append(
                f'<circle class="pt highlight" cx="{_fmt(px)}" cy="{_fmt(py)}" r="4.0" '
                f'fill="{HIGHLIGHT_COLOR}"/>'
            )
        else:
            parts.append(
                f'<circle class="pt" cx="{_fmt(px)}" cy="{_fmt(py)}" r="1.6" '
                f'fill="{POINT_COLOR}" fill-opacity="0.75"/>'
            )
    parts.append("</svg>")
    _write_text(out_path, "\n".join(parts) + "\n")


def freedman_diaconis_edges(values: np.ndarray) -> np.ndarray:
    """Bin edges anchored at min(values) with the Freedman-Diaconis width.

    Anchoring at the data minimum makes the rule translation-covariant:
    shifting every value by c shifts every edge by c.
    """
    values = np.asarray(values, dtype=np.float64)
    lo, hi = float(values.min()), float(values.max())
    q25, q75 = np.percentile(values, [25, 75])
    h = 2.0 * (q75 - q25) / len(values) ** (1.0 / 3.0)
    if h <= 0 or not math.isfinite(h):
        return np.array([lo, hi if hi > lo else lo + 1.0])
    nbins = max(1, int(math.ceil((hi - lo) / h)))
    return lo + h * np.arange(nbins + 1)


def histogram_scale(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    edges = freedman_diaconis_edges(values)
    counts, _ = np.histogram(values, bins=edges)
    return edges, counts


def plot_histogram(in_path: str | os.PathLike, normalized: bool, out_path: str | os.PathLike) -> None:
    """Histogram of the full population with both flagged subpopulations
    (2q+1 prime, 2q-1 prime) superimposed on the same bins."""
    rows = load_rows(in_path)
    if len(rows) < 2:
        raise SchemaError(f"{in_path}: need at least 2 rows for a histogram")
    values = _values(rows, normalized)
    edges, counts = histogram_scale(values)
    p1 = np.array([row.flag_2qp1 for row in rows])
    m1 = np.array([row.flag_2qm1 for row in rows])
    counts_p1, _ = np.histogram(values[p1], bins=edges)
    counts_m1, _ = np.histogram(values[m1], bins=edges)

    xlo, xhi = float(edges[0]), float(edges[-1])
    span = xhi - xlo if xhi > xlo else 1.0
    ymax = max(1, int(counts.max()))

    parts: list[str] = []
    _svg_open(parts)
    _frame(parts)
    xlabel = "R(q) (log q)^(3/4)" if normalized else "R(q)"
    _axes(parts, xlo, xhi, 0.0, float(ymax), xlabel, "count")

    def bars(cls: str, cnts: np.ndarray, color: str, opacity: str) -> None:
        for i, c in enumerate(cnts):
            if c == 0:
                continue
            x0 = MARGIN_L + (edges[i] - xlo) / span * PLOT_W
            x1 = MARGIN_L + (edges[i + 1] - xlo) / span * PLOT_W
            hpx = c / ymax * PLOT_H
            parts.append(
                f'<rect class="{cls}" x="{_fmt(x0)}" y="{_fmt(MARGIN_T + PLOT_H - hpx)}" '
                f'width="{_fmt(x1 - x0)}" height="{_fmt(hpx)}" fill="{color}" '
                f'fill-opacity="{opacity}"/>'
            )

    bars("bar-total", counts, TOTAL_COLOR, "0.9")
    bars("bar-2qp1", counts_p1, P1_COLOR, "0.8")
    bars("bar-2qm1", counts_m1, M1_COLOR, "0.7")

    mean = float(np.mean(values))
    mx = MARGIN_L + (mean - xlo) / span * PLOT_W
    parts.append(
        f'<line class="mean" x1="{_fmt(mx)}" y1="{MARGIN_T}" x2="{_fmt(mx)}" '
        f'y2="{MARGIN_T + PLOT_H}" stroke="{MEAN_COLOR}" stroke-width="1.5" '
        'stroke-dasharray="6,4"/>'
    )
    parts.append("</svg>")
    _write_text(out_path, "\n".join(parts) + "\n")


def _write_text(path: str | os.PathLike, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
