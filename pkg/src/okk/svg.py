"""Static SVG 1.1 rendering. Coordinates become decimals here and only here."""

from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .geometry import Polygon
from .io import fmt
from .okounkov import PLFunction1D

SIZE = 480
PAD = 40


class _Frame:
    def __init__(self, polys: Sequence[Polygon], extra=()):
        pts = [v for p in polys for v in p.vertices] + list(extra)
        if not pts:
            pts = [(0, 0)]
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, 1e-9)
        self.k = (SIZE - 2 * PAD) / span

    def __call__(self, p) -> tuple[float, float]:
        x = PAD + (float(p[0]) - self.x0) * self.k
        y = SIZE - PAD - (float(p[1]) - self.y0) * self.k
        return round(x, 3), round(y, 3)


def _poly(fr: _Frame, p: Polygon, style: str) -> str:
    pts = " ".join(f"{x},{y}" for x, y in map(fr, p.vertices))
    return f'<polygon points="{pts}" {style}/>'


def render(polygon: Optional[Polygon] = None, chambers: Sequence[Polygon] = (),
           beta: Optional[PLFunction1D] = None, title: str = "") -> str:
    polys = ([polygon] if polygon is not None else []) + list(chambers)
    extra = [] if beta is None else list(zip(beta.breakpoints, beta.values))
    fr = _Frame(polys, extra)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    if polygon is not None and not polygon.is_empty:
        out.append(_poly(fr, polygon, 'fill="#cfe0f3" stroke="#1f4e79" stroke-width="2"'))
    for c in chambers:
        out.append(_poly(fr, c, 'fill="none" stroke="#c0504d" stroke-width="1"'))
    if beta is not None:
        pts = " ".join(f"{x},{y}" for x, y in (fr(p) for p in zip(beta.breakpoints, beta.values)))
        out.append(f'<polyline points="{pts}" fill="none" stroke="#2e7d32" stroke-width="2"/>')
    if polygon is not None:
        for v in polygon.vertices:
            x, y = fr(v)
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#1f4e79"/>')
            out.append(f'<text x="{x + 4}" y="{y - 4}" font-size="11">({fmt(v.x)}, {fmt(v.y)})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
