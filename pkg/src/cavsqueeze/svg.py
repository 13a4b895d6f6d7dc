"""Minimal SVG line plots and heatmaps, no plotting dependencies.

Deliberately bare renderings for quick visual checks of emitted CSV
datasets; anything publication grade should be replotted from the CSVs.
"""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 36, 50
SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
                 "#e377c2")
_HEAT_STOPS = np.array([
    (0.0, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.5, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.0, (253, 231, 37)),
], dtype=object)


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = np.linspace(lo, hi, n)
    return [float(v) for v in raw]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


class _Canvas:
    def __init__(self, title, xlabel, ylabel):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>',
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{xlabel}</text>',
            f'<text x="18" y="{HEIGHT / 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" '
            f'transform="rotate(-90 18 {HEIGHT / 2})">{ylabel}</text>',
        ]

    def axes(self, xlo, xhi, ylo, yhi):
        x0, x1 = MARGIN_L, WIDTH - MARGIN_R
        y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
        self.parts.append(
            f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
            f'fill="none" stroke="black"/>')
        for v in _ticks(xlo, xhi):
            px = self.map_x(v, xlo, xhi)
            self.parts.append(
                f'<line x1="{px:.1f}" y1="{y0}" x2="{px:.1f}" y2="{y0 + 5}" '
                f'stroke="black"/>')
            self.parts.append(
                f'<text x="{px:.1f}" y="{y0 + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{_fmt(v)}</text>')
        for v in _ticks(ylo, yhi):
            py = self.map_y(v, ylo, yhi)
            self.parts.append(
                f'<line x1="{x0 - 5}" y1="{py:.1f}" x2="{x0}" y2="{py:.1f}" '
                f'stroke="black"/>')
            self.parts.append(
                f'<text x="{x0 - 8}" y="{py + 4:.1f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{_fmt(v)}</text>')

    @staticmethod
    def map_x(v, lo, hi):
        span = hi - lo or 1.0
        return MARGIN_L + (v - lo) / span * (WIDTH - MARGIN_L - MARGIN_R)

    @staticmethod
    def map_y(v, lo, hi):
        span = hi - lo or 1.0
        return (HEIGHT - MARGIN_B) - (v - lo) / span * (HEIGHT - MARGIN_T - MARGIN_B)

    def save(self, path):
        self.parts.append("</svg>")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self.parts) + "\n")


def line_plot(path, x, series: dict, title: str = "", xlabel: str = "omega (g)",
              ylabel: str = "") -> None:
    """Write a line plot of one or more named series over ``x``."""
    x = np.asarray(x, dtype=float)
    finite = [np.asarray(y, dtype=float) for y in series.values()]
    allv = np.concatenate([v[np.isfinite(v)] for v in finite])
    ylo, yhi = float(allv.min()), float(allv.max())
    if yhi == ylo:
        ylo, yhi = ylo - 0.5, yhi + 0.5
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad
    canvas = _Canvas(title, xlabel, ylabel)
    canvas.axes(float(x.min()), float(x.max()), ylo, yhi)
    for color, (label, y) in zip(SERIES_COLORS, series.items()):
        y = np.asarray(y, dtype=float)
        pts = " ".join(
            f"{canvas.map_x(xv, x.min(), x.max()):.2f},"
            f"{canvas.map_y(yv, ylo, yhi):.2f}"
            for xv, yv in zip(x, y) if np.isfinite(yv))
        canvas.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>')
        canvas.parts.append(
            f'<text x="{WIDTH - MARGIN_R - 8}" '
            f'y="{MARGIN_T + 16 * (1 + list(series).index(label))}" '
            f'text-anchor="end" font-family="sans-serif" font-size="12" '
            f'fill="{color}">{label}</text>')
    canvas.save(path)


def _heat_color(v: float) -> str:
    stops = _HEAT_STOPS
    for i in range(len(stops) - 1):
        lo, chi_lo = stops[i]
        hi, chi_hi = stops[i + 1]
        if v <= hi:
            t = (v - lo) / (hi - lo)
            rgb = [int(round(a + t * (b - a))) for a, b in zip(chi_lo, chi_hi)]
            return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"
    return "rgb(253,231,37)"


def heatmap(path, x, y, z, title: str = "", xlabel: str = "omega (g)",
            ylabel: str = "kappa (g)") -> None:
    """Write a heatmap of z[j, i] over grid (x[i], y[j])."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    zlo = float(np.nanmin(z))
    zhi = float(np.nanmax(z))
    span = (zhi - zlo) or 1.0
    canvas = _Canvas(f"{title}  [{_fmt(zlo)} .. {_fmt(zhi)}]", xlabel, ylabel)
    canvas.axes(float(x.min()), float(x.max()), float(y.min()), float(y.max()))
    cell_w = (WIDTH - MARGIN_L - MARGIN_R) / len(x)
    cell_h = (HEIGHT - MARGIN_T - MARGIN_B) / len(y)
    for j, yv in enumerate(y):
        py = canvas.map_y(yv, y.min(), y.max())
        for i, xv in enumerate(x):
            if not np.isfinite(z[j, i]):
                continue
            px = canvas.map_x(xv, x.min(), x.max())
            color = _heat_color((z[j, i] - zlo) / span)
            canvas.parts.append(
                f'<rect x="{px - cell_w / 2:.2f}" y="{py - cell_h / 2:.2f}" '
                f'width="{cell_w:.2f}" height="{cell_h:.2f}" fill="{color}"/>')
    canvas.save(path)
