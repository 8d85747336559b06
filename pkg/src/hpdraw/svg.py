"""Deterministic SVG rendering of drawings."""

from __future__ import annotations

import math

from .model import (
    FlatOrthogonalDrawing,
    VisibilityRep,
    defining_points,
    metrics,
)

__all__ = ["render_svg"]

MARGIN = 20


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _column_map(xmin, xmax, threshold):
    span = xmax - xmin
    if threshold is None or span <= threshold:
        return lambda x: float(x - xmin)
    # log compression keeps the order of columns but squeezes huge widths
    k = threshold / math.log1p(float(span))

    def f(x):
        return k * math.log1p(float(x - xmin))

    return f


def render_svg(d, scale: float = 20.0, compress_above: int | None = 200) -> str:
    """SVG text for ``d``.

    Columns are scaled by ``scale``; when the drawing is wider than
    ``compress_above`` columns the x axis is compressed logarithmically
    (pass None to disable).
    """
    pts = list(defining_points(d))
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    fx = _column_map(xmin, xmax, compress_above)

    def X(x):
        return MARGIN + fx(x) * scale

    def Y(y):
        return MARGIN + float(ymax - y) * scale

    W = X(xmax) + MARGIN
    H = Y(ymin) + MARGIN
    m = metrics(d)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(W)}" height="{_fmt(H)}" '
        f'viewBox="0 0 {_fmt(W)} {_fmt(H)}">',
        f"<desc>style={d.style} n={d.graph.n} m={d.graph.m} width={m.width} height={m.height}</desc>",
        '<g stroke="#ccc" stroke-width="0.5">',
    ]
    for y in range(int(ymin), int(ymax) + 1):
        out.append(f'<line x1="{_fmt(MARGIN / 2)}" y1="{_fmt(Y(y))}" x2="{_fmt(W - MARGIN / 2)}" y2="{_fmt(Y(y))}"/>')
    out.append("</g>")
    out.append('<g stroke="#333" stroke-width="1.5" fill="none">')
    for path in d.paths():
        coords = " ".join(f"{_fmt(X(p.x))},{_fmt(Y(p.y))}" for p in path)
        out.append(f'<polyline points="{coords}"/>')
    out.append("</g>")
    thick = max(2.0, scale / 4)
    if isinstance(d, VisibilityRep):
        out.append('<g fill="#4a7ab5" stroke="#1d3d63">')
        for b in d.boxes:
            x0, x1 = X(b.xl) - thick / 2, X(b.xr) + thick / 2
            y0, y1 = Y(b.y1) - thick / 2, Y(b.y0) + thick / 2
            out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}"/>')
    elif isinstance(d, FlatOrthogonalDrawing):
        out.append('<g fill="#4a7ab5" stroke="#1d3d63">')
        for b in d.boxes:
            x0, x1 = X(b.xl) - thick / 2, X(b.xr) + thick / 2
            y0 = Y(b.y) - thick / 2
            out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" height="{_fmt(thick)}"/>')
    else:
        out.append('<g fill="#4a7ab5">')
        for p in d.pos:
            out.append(f'<circle cx="{_fmt(X(p.x))}" cy="{_fmt(Y(p.y))}" r="{_fmt(thick / 2 + 1)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
