"""Minimal hand-emitted SVG line charts.

Convenience output only; the CSV files are the contract.  One chart =
axes with ticks, one polyline per series, optional error bars.
"""

import math
from dataclasses import dataclass, field

import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 34, 46


@dataclass
class Series:
    label: str
    x: np.ndarray
    y: np.ndarray
    color: str
    dash: str | None = None  # e.g. "6,4"
    yerr: np.ndarray | None = None
    markers: bool = False


@dataclass
class Chart:
    title: str
    xlabel: str
    ylabel: str
    series: list[Series] = field(default_factory=list)


def _finite(values):
    v = np.asarray(values, dtype=float)
    return v[np.isfinite(v)]


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s for s in (1, 2, 5, 10) if s * mag >= raw) * mag
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-9 * step:
        out.append(round(t, 12))
        t += step
    return out


def render(chart: Chart) -> str:
    xs = np.concatenate([_finite(s.x) for s in chart.series]) if chart.series else np.array([0.0, 1.0])
    ys = []
    for s in chart.series:
        ok = np.isfinite(np.asarray(s.y, dtype=float))
        ys.append(np.asarray(s.y, dtype=float)[ok])
        if s.yerr is not None:
            ys.append(np.asarray(s.y, dtype=float)[ok] + np.asarray(s.yerr, dtype=float)[ok])
            ys.append(np.asarray(s.y, dtype=float)[ok] - np.asarray(s.yerr, dtype=float)[ok])
    ys = np.concatenate(ys) if ys else np.array([0.0, 1.0])
    if xs.size == 0:
        xs = np.array([0.0, 1.0])
    if ys.size == 0:
        ys = np.array([0.0, 1.0])

    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    pad = 0.05 * (y1 - y0 or 1.0)
    y0, y1 = y0 - pad, y1 + pad
    if x1 == x0:
        x1 = x0 + 1.0

    px0, px1 = MARGIN_L, WIDTH - MARGIN_R
    py0, py1 = HEIGHT - MARGIN_B, MARGIN_T

    def sx(x):
        return px0 + (x - x0) / (x1 - x0) * (px1 - px0)

    def sy(y):
        return py0 + (y - y0) / (y1 - y0) * (py1 - py0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{chart.title}</text>',
        f'<line x1="{px0}" y1="{py0}" x2="{px1}" y2="{py0}" stroke="black"/>',
        f'<line x1="{px0}" y1="{py0}" x2="{px0}" y2="{py1}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        parts.append(
            f'<line x1="{sx(t):.1f}" y1="{py0}" x2="{sx(t):.1f}" y2="{py0 + 5}" stroke="black"/>'
            f'<text x="{sx(t):.1f}" y="{py0 + 18}" text-anchor="middle">{t:g}</text>'
        )
    for t in _ticks(y0, y1):
        parts.append(
            f'<line x1="{px0 - 5}" y1="{sy(t):.1f}" x2="{px0}" y2="{sy(t):.1f}" stroke="black"/>'
            f'<text x="{px0 - 8}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:g}</text>'
        )
    parts.append(
        f'<text x="{(px0 + px1) / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">{chart.xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{(py0 + py1) / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(py0 + py1) / 2:.1f})">{chart.ylabel}</text>'
    )

    legend_y = MARGIN_T + 6
    for s in chart.series:
        x = np.asarray(s.x, dtype=float)
        y = np.asarray(s.y, dtype=float)
        ok = np.isfinite(x) & np.isfinite(y)
        if not ok.any():
            continue
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x[ok], y[ok]))
        dash = f' stroke-dasharray="{s.dash}"' if s.dash else ""
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{s.color}" stroke-width="1.5"{dash}/>'
        )
        if s.yerr is not None:
            err = np.asarray(s.yerr, dtype=float)
            for a, b, e in zip(x[ok], y[ok], err[ok]):
                if not np.isfinite(e):
                    continue
                parts.append(
                    f'<line x1="{sx(a):.2f}" y1="{sy(b - e):.2f}" '
                    f'x2="{sx(a):.2f}" y2="{sy(b + e):.2f}" stroke="{s.color}"/>'
                )
        if s.markers:
            for a, b in zip(x[ok], y[ok]):
                parts.append(f'<circle cx="{sx(a):.2f}" cy="{sy(b):.2f}" r="2.5" fill="{s.color}"/>')
        parts.append(
            f'<line x1="{px1 - 130}" y1="{legend_y}" x2="{px1 - 110}" y2="{legend_y}" '
            f'stroke="{s.color}" stroke-width="1.5"{dash}/>'
            f'<text x="{px1 - 104}" y="{legend_y + 4}">{s.label}</text>'
        )
        legend_y += 16

    parts.append("</svg>")
    return "\n".join(parts)


def write(path, chart: Chart) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(chart))
        fh.write("\n")
