"""Minimal SVG line charts and heat maps (no plotting dependency)."""

from __future__ import annotations

from html import escape
from typing import Mapping, Sequence

import numpy as np

_COLORS = ("#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e", "#8c564b")
_W, _H, _PAD = 640, 400, 50


def _frame(body: list[str], title: str) -> str:
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" font-family="sans-serif" font-size="12">'
    caption = f'<text x="{_W / 2}" y="20" text-anchor="middle">{escape(title)}</text>'
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', caption, *body, "</svg>"]) + "\n"


def line_chart(series: Mapping[str, tuple[Sequence[float], Sequence[float]]], title: str = "",
               y_range: tuple[float, float] | None = None, hline: float | None = None) -> str:
    """``series`` maps a label to ``(x, y)``; optional ``hline`` draws a grey reference."""
    xs = np.concatenate([np.asarray(x, float) for x, _ in series.values()]) if series else np.zeros(1)
    ys = np.concatenate([np.asarray(y, float) for _, y in series.values()]) if series else np.zeros(1)
    x0, x1 = float(xs.min()), float(max(xs.max(), xs.min() + 1))
    y0, y1 = y_range or (float(np.nanmin(ys)), float(np.nanmax(ys)))
    if y1 <= y0:
        y1 = y0 + 1.0

    def px(x):
        return _PAD + (x - x0) / (x1 - x0) * (_W - 2 * _PAD)

    def py(y):
        return _H - _PAD - (y - y0) / (y1 - y0) * (_H - 2 * _PAD)

    body = [
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<text x="{_PAD}" y="{_H - _PAD + 15}" text-anchor="middle">{x0:g}</text>',
        f'<text x="{_W - _PAD}" y="{_H - _PAD + 15}" text-anchor="middle">{x1:g}</text>',
        f'<text x="{_PAD - 5}" y="{_H - _PAD}" text-anchor="end">{y0:.2f}</text>',
        f'<text x="{_PAD - 5}" y="{_PAD + 4}" text-anchor="end">{y1:.2f}</text>',
    ]
    if hline is not None:
        body.append(f'<line x1="{_PAD}" y1="{py(hline):.1f}" x2="{_W - _PAD}" y2="{py(hline):.1f}" '
                    'stroke="grey" stroke-dasharray="4 3"/>')
    for i, (label, (x, y)) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(a):.1f},{py(b):.1f}" for a, b in zip(x, y) if np.isfinite(b))
        body.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        body.append(f'<text x="{_W - _PAD - 5}" y="{_PAD + 15 * (i + 1)}" text-anchor="end" fill="{color}">'
                    f"{escape(label)}</text>")
    return _frame(body, title)


def heat_map(values: np.ndarray, row_labels: Sequence, col_labels: Sequence, title: str = "",
             vmin: float = 0.0, vmax: float = 1.0, annotate: bool = True) -> str:
    """Grey-scale heat map; darker cells hold larger values."""
    values = np.asarray(values, float)
    rows, cols = values.shape
    cw = (_W - 2 * _PAD) / cols
    ch = (_H - 2 * _PAD) / rows
    body = []
    for i in range(rows):
        for j in range(cols):
            v = values[i, j]
            frac = 0.0 if vmax <= vmin else float(np.clip((v - vmin) / (vmax - vmin), 0, 1))
            level = int(round(255 * (1 - frac)))
            x, y = _PAD + j * cw, _PAD + i * ch
            body.append(f'<rect x="{x:.1f}" y="{y:.1f}" width="{cw:.1f}" height="{ch:.1f}" '
                        f'fill="rgb({level},{level},{level})"/>')
            if annotate and rows * cols <= 100:
                ink = "white" if frac > 0.5 else "black"
                body.append(f'<text x="{x + cw / 2:.1f}" y="{y + ch / 2 + 4:.1f}" text-anchor="middle" '
                            f'fill="{ink}">{v:.3f}</text>')
    for i, lab in enumerate(row_labels):
        body.append(f'<text x="{_PAD - 5}" y="{_PAD + (i + 0.5) * ch + 4:.1f}" text-anchor="end">{escape(str(lab))}</text>')
    for j, lab in enumerate(col_labels):
        body.append(f'<text x="{_PAD + (j + 0.5) * cw:.1f}" y="{_H - _PAD + 15}" text-anchor="middle">{escape(str(lab))}</text>')
    return _frame(body, title)
