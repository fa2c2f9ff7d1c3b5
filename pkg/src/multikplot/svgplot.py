"""Static SVG rendering of the four-panel K-plot.

Output is plain text built from fixed-precision coordinates, so the same
curves always give byte-identical files.
"""

from __future__ import annotations

import os
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .estimators import KendallCurve

PANEL = 260.0
MARGIN_LEFT = 60.0
MARGIN_TOP = 40.0
GAP_X = 70.0
GAP_Y = 80.0
TICKS = (0.0, 0.5, 1.0)
X_LABEL = "W(t) = t − t·log t"


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _step_path(w: np.ndarray, k: np.ndarray) -> str:
    # right-continuous step through the grid points
    pts = [(w[0], k[0])]
    for i in range(1, w.size):
        pts.append((w[i], k[i - 1]))
        pts.append((w[i], k[i]))
    cmds = [f"M{_fmt(PANEL * a)},{_fmt(PANEL * (1 - b))}" for a, b in pts[:1]]
    cmds += [f"L{_fmt(PANEL * a)},{_fmt(PANEL * (1 - b))}" for a, b in pts[1:]]
    return " ".join(cmds)


def _panel(curve: KendallCurve, ox: float, oy: float) -> list[str]:
    i = curve.panel
    out = [
        f'<g class="panel" id="panel-{i}" transform="translate({_fmt(ox)},{_fmt(oy)})">',
        f'<text class="title" x="{_fmt(PANEL / 2)}" y="-12" text-anchor="middle">Panel {i}: K̂{"₀₁₂₃"[i]}</text>',
        f'<rect x="0" y="0" width="{_fmt(PANEL)}" height="{_fmt(PANEL)}" fill="none" stroke="#000"/>',
        f'<line class="diagonal" x1="0" y1="{_fmt(PANEL)}" x2="{_fmt(PANEL)}" y2="0" stroke="#888" stroke-dasharray="4,3"/>',
    ]
    for t in TICKS:
        p = PANEL * t
        out.append(f'<text class="tick" x="{_fmt(p)}" y="{_fmt(PANEL + 16)}" text-anchor="middle">{_fmt(t)}</text>')
        out.append(f'<text class="tick" x="-6" y="{_fmt(PANEL - p + 4)}" text-anchor="end">{_fmt(t)}</text>')
    out.append(f'<path class="curve" d="{_step_path(curve.w, curve.k)}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    out.append(f'<text class="xlabel" x="{_fmt(PANEL / 2)}" y="{_fmt(PANEL + 34)}" text-anchor="middle">{escape(X_LABEL)}</text>')
    out.append(
        f'<text class="ylabel" x="-40" y="{_fmt(PANEL / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 -40 {_fmt(PANEL / 2)})">K̂{"₀₁₂₃"[i]}(t)</text>'
    )
    out.append("</g>")
    return out


def kplot_svg(curves: Sequence[KendallCurve], title: str | None = None) -> str:
    """SVG document text for four curves laid out 2 x 2 (panel i at row
    i // 2, column i % 2)."""
    if len(curves) != 4 or sorted(c.panel for c in curves) != [0, 1, 2, 3]:
        raise ValueError("need exactly one curve for each panel 0..3")
    grid = curves[0].grid
    for c in curves[1:]:
        if c.grid.shape != grid.shape or not np.array_equal(c.grid, grid):
            raise ValueError("all four curves must share the same t grid")
    for c in curves:
        if np.any((c.w < 0) | (c.w > 1) | (c.k < 0) | (c.k > 1)):
            raise ValueError(f"panel {c.panel} has coordinates outside [0, 1]")
    width = 2 * MARGIN_LEFT + 2 * PANEL + GAP_X
    height = 2 * MARGIN_TOP + 2 * PANEL + GAP_Y
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="sans-serif" font-size="11">',
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    for c in sorted(curves, key=lambda c: c.panel):
        row, col = divmod(c.panel, 2)
        ox = MARGIN_LEFT + col * (PANEL + GAP_X)
        oy = MARGIN_TOP + row * (PANEL + GAP_Y)
        lines.extend(_panel(c, ox, oy))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_kplot(curves: Sequence[KendallCurve], out: str | os.PathLike, title: str | None = None) -> None:
    text = kplot_svg(curves, title)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
