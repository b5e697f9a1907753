"""Minimal deterministic SVG writers: torus scatter plots and spectrum line plots.

Output depends only on the inputs; the first line is a generator comment
holding the package version, which golden-file comparisons may strip.
"""

from __future__ import annotations

from html import escape

import numpy as np

__all__ = ["CLASS_COLORS", "UNLABELED", "scatter_svg", "torus_svg", "line_plot_svg"]

CLASS_COLORS = ("#1f4fd6", "#d62728", "#2ca02c", "#e6a700", "#9467bd", "#17becf", "#8c564b", "#e377c2")
UNLABELED = "#888888"

_W, _H = 420, 420
_MARGIN = 56


def _header(width, height, title):
    from . import __version__

    return [
        f"<!-- magnetic-eigenmaps {__version__} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]


def _num(x):
    return f"{x:.3f}"


def _colors(labels, n):
    if labels is None:
        return [UNLABELED] * n, {}
    labels = list(labels)
    classes = sorted({lab for lab in labels if lab is not None}, key=lambda v: (str(type(v)), v))
    # integer class c maps to palette slot c so class 0 is blue and class 1 red
    def slot(value, rank):
        try:
            c = int(value)
            if c == value and c >= 0:
                return c
        except (TypeError, ValueError):
            pass
        return rank

    palette = {lab: CLASS_COLORS[slot(lab, r) % len(CLASS_COLORS)] for r, lab in enumerate(classes)}
    return [palette.get(lab, UNLABELED) if lab is not None else UNLABELED for lab in labels], palette


def scatter_svg(x, y, labels=None, xlim=None, ylim=None, title="", xlabel="", ylabel="", ticks=None) -> str:
    """Scatter plot; ``ticks`` is an optional list of ``(value, text)`` used on both axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xlim = xlim or _pad(x)
    ylim = ylim or _pad(y)
    colors, palette = _colors(labels, len(x))
    x0, x1 = _MARGIN, _W - 20
    y0, y1 = _H - _MARGIN, 36

    def sx(v):
        return x0 + (v - xlim[0]) / (xlim[1] - xlim[0]) * (x1 - x0)

    def sy(v):
        return y0 + (v - ylim[0]) / (ylim[1] - ylim[0]) * (y1 - y0)

    out = _header(_W, _H, title)
    out.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for value, text in ticks or _auto_ticks(xlim):
        out.append(f'<text x="{_num(sx(value))}" y="{y0 + 16}" text-anchor="middle">{escape(text)}</text>')
    for value, text in ticks or _auto_ticks(ylim):
        out.append(f'<text x="{x0 - 6}" y="{_num(sy(value) + 4)}" text-anchor="end">{escape(text)}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{_H - 14}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{escape(ylabel)}</text>'
    )
    out.append('<g stroke="black" stroke-width="0.5">')
    for xi, yi, c in zip(x, y, colors):
        out.append(f'<circle cx="{_num(sx(xi))}" cy="{_num(sy(yi))}" r="3.5" fill="{c}"/>')
    out.append("</g>")
    for r, (lab, c) in enumerate(palette.items()):
        out.append(f'<circle cx="{x1 - 60}" cy="{y1 + 14 + 14 * r}" r="4" fill="{c}"/>')
        out.append(f'<text x="{x1 - 52}" y="{y1 + 18 + 14 * r}">{escape(str(lab))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def torus_svg(coords, labels=None, title="", axes=(0, 1)) -> str:
    """Phases on the square ``[0, 2pi]^2``; dashed borders mark the identified cut lines."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape[1] == 1:
        coords = np.column_stack([coords[:, 0], np.zeros(len(coords))])
    two_pi = 2 * np.pi
    ticks = [(0.0, "0"), (np.pi, "π"), (two_pi, "2π")]
    svg = scatter_svg(
        coords[:, 0],
        coords[:, 1],
        labels,
        xlim=(0.0, two_pi),
        ylim=(0.0, two_pi),
        title=title,
        xlabel=f"phase(phi_{axes[0]})",
        ylabel=f"phase(phi_{axes[1]})" if len(axes) > 1 else "",
        ticks=ticks,
    )
    x0, x1, y0, y1 = _MARGIN, _W - 20, _H - _MARGIN, 36
    cuts = (
        f'<g stroke="#555555" stroke-dasharray="6 4" stroke-width="1.5">'
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}"/><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>'
        f'<line x1="{x0}" y1="{y1}" x2="{x0}" y2="{y0}"/><line x1="{x1}" y1="{y1}" x2="{x1}" y2="{y0}"/></g>'
    )
    return svg.replace('<g stroke="black" stroke-width="0.5">', cuts + '\n<g stroke="black" stroke-width="0.5">', 1)


def line_plot_svg(series: dict, title="", xlabel="", ylabel="") -> str:
    """Marker-and-line plot of each named series against its index."""
    palette = ("#1f4fd6", "#d62728", "#2ca02c", "#e6a700")
    allv = np.concatenate([np.asarray(v, dtype=float) for v in series.values()])
    n = max(len(v) for v in series.values())
    xlim = (-0.5, n - 0.5)
    ylim = _pad(allv)
    x0, x1 = _MARGIN, _W - 20
    y0, y1 = _H - _MARGIN, 36

    def sx(v):
        return x0 + (v - xlim[0]) / (xlim[1] - xlim[0]) * (x1 - x0)

    def sy(v):
        return y0 + (v - ylim[0]) / (ylim[1] - ylim[0]) * (y1 - y0)

    out = _header(_W, _H, title)
    out.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for value, text in _auto_ticks(ylim):
        out.append(f'<text x="{x0 - 6}" y="{_num(sy(value) + 4)}" text-anchor="end">{escape(text)}</text>')
    step = max(1, n // 8)
    for k in range(0, n, step):
        out.append(f'<text x="{_num(sx(k))}" y="{y0 + 16}" text-anchor="middle">{k}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{_H - 14}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{escape(ylabel)}</text>'
    )
    for r, (name, values) in enumerate(series.items()):
        c = palette[r % len(palette)]
        pts = " ".join(f"{_num(sx(k))},{_num(sy(v))}" for k, v in enumerate(values))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{c}" stroke-width="1.5"/>')
        for k, v in enumerate(values):
            out.append(f'<circle cx="{_num(sx(k))}" cy="{_num(sy(v))}" r="3" fill="{c}"/>')
        out.append(f'<line x1="{x0 + 10}" y1="{y1 + 14 + 14 * r}" x2="{x0 + 26}" y2="{y1 + 14 + 14 * r}" stroke="{c}" stroke-width="2"/>')
        out.append(f'<text x="{x0 + 30}" y="{y1 + 18 + 14 * r}">{escape(str(name))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _pad(v):
    v = np.asarray(v, dtype=float)
    lo, hi = (float(v.min()), float(v.max())) if len(v) else (0.0, 1.0)
    span = hi - lo if hi > lo else 1.0
    return lo - 0.05 * span, hi + 0.05 * span


def _auto_ticks(lim):
    lo, hi = lim
    return [(v, f"{v:.3g}") for v in np.linspace(lo, hi, 5)[1:-1]]
