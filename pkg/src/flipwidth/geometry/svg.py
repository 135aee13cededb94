"""Deterministic hand-written SVG for scenes, interchanges and grid point sets."""

from __future__ import annotations

import math
from typing import Iterable
from xml.sax.saxutils import escape

from ..interchange import Interchange
from .scene import Scene

COLORS = {"lane": "#1f5fa8", "ramp": "#c0392b", "blocker": "#7f8c8d", "plain": "#444444"}
WIDTH = 640
PAD = 20


def _doc(body: list[str], w: float = WIDTH, h: float = WIDTH) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
            f'viewBox="0 0 {w:.0f} {h:.0f}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


class _Frame:
    """Affine map from data coordinates to the canvas (y up)."""

    def __init__(self, xs: Iterable[float], ys: Iterable[float], w=WIDTH, h=WIDTH):
        xs, ys = list(xs) or [0.0], list(ys) or [0.0]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or 1.0
        self.s = (min(w, h) - 2 * PAD) / span
        self.h = h

    def __call__(self, x, y):
        return PAD + (float(x) - self.x0) * self.s, self.h - PAD - (float(y) - self.y0) * self.s


def render_svg(obj) -> str:
    """SVG text for a :class:`Scene`, an :class:`Interchange` or a list of grid pairs."""
    if isinstance(obj, Scene):
        return _render_scene(obj)
    if isinstance(obj, Interchange):
        return _render_interchange(obj)
    return render_grid_pairs(list(obj))


def _render_scene(scene: Scene) -> str:
    if not scene.objects:
        return _doc([])
    kind = scene.kind
    body = []
    if kind == "intervals":
        xs = [float(c) for o in scene.objects for c in o]
        f = _Frame(xs, [0, len(scene.objects)])
        for k, ((a, b), role) in enumerate(zip(scene.objects, scene.roles)):
            (x1, y), (x2, _) = f(a, k), f(b, k)
            body.append(f'<line x1="{x1:.2f}" y1="{y:.2f}" x2="{x2:.2f}" y2="{y:.2f}" '
                        f'stroke="{COLORS[role]}" stroke-width="2"/>')
    elif kind == "segments":
        pts = [p for o in scene.objects for p in o]
        f = _Frame([p[0] for p in pts], [p[1] for p in pts])
        for (p, q), role in zip(scene.objects, scene.roles):
            (x1, y1), (x2, y2) = f(*p), f(*q)
            body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                        f'stroke="{COLORS[role]}" stroke-width="1.5"/>')
    elif kind == "squares":
        pts = [p for o in scene.objects for p in o]
        f = _Frame([p[0] for p in pts], [p[1] for p in pts])
        for (lo, hi), role in zip(scene.objects, scene.roles):
            (x1, y1), (x2, y2) = f(*lo), f(*hi)
            body.append(f'<rect x="{x1:.2f}" y="{y2:.2f}" width="{x2 - x1:.2f}" '
                        f'height="{y1 - y2:.2f}" fill="none" stroke="{COLORS[role]}"/>')
    elif kind == "chords":
        m = scene.meta.get("positions", 2 * len(scene.objects))
        c, r = WIDTH / 2, WIDTH / 2 - PAD

        def at(k):
            a = 2 * math.pi * k / m
            return c + r * math.cos(a), c - r * math.sin(a)
        body.append(f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#bbbbbb"/>')
        for (a, b), role in zip(scene.objects, scene.roles):
            (x1, y1), (x2, y2) = at(a), at(b)
            body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                        f'stroke="{COLORS[role]}"/>')
    elif kind == "polygon":
        f = _Frame([p[0] for p in scene.objects], [p[1] for p in scene.objects])
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in (f(*p) for p in scene.objects))
        body.append(f'<polygon points="{path}" fill="#eef3fa" stroke="#333333"/>')
        body += _dots(f, scene.objects, scene.roles, skip_plain=True)
    else:  # point kinds; higher dimensions show their first two coordinates
        f = _Frame([p[0] for p in scene.objects], [p[1] for p in scene.objects])
        body += _dots(f, scene.objects, scene.roles)
    return _doc(body)


def _dots(f, points, roles, skip_plain=False):
    out = []
    for p, role in zip(points, roles):
        if skip_plain and role == "plain":
            continue
        x, y = f(p[0], p[1])
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{COLORS[role]}"/>')
    return out


def _render_interchange(ic: Interchange) -> str:
    """Lanes on a line, ramps on arcs above them; base lane-ramp edges drawn."""
    n = ic.order
    f = _Frame([0, n - 1], [0, (n - 1) / 2])
    pos = {v: f(k, 0) for k, v in enumerate(ic.lanes)}
    for (i, j), v in ic.ramps.items():
        pos[v] = f((i + j) / 2, (j - i) / 2)
    body = []
    for (i, j), v in ic.ramps.items():
        for k in range(n):
            if ic.graph.has_edge(v, ic.lanes[k]):
                (x1, y1), (x2, y2) = pos[v], pos[ic.lanes[k]]
                body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                            f'stroke="#cccccc" stroke-width="0.6"/>')
    for v, (x, y) in sorted(pos.items()):
        role = "lane" if v in ic.lane_index else "ramp"
        body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{COLORS[role]}"/>')
    return _doc(body)


def render_grid_pairs(pairs, n: int | None = None, title: str = "") -> str:
    """Scatter of lane pairs ``(x, y)`` as grid points (for the tilted grid)."""
    if n is None:
        n = max((max(p) for p in pairs), default=0) + 1
    f = _Frame([0, max(n - 1, 1)], [0, max(n - 1, 1)])
    body = []
    if title:
        body.append(f'<text x="{PAD}" y="{PAD - 5}" font-size="12">{escape(title)}</text>')
    for x, y in sorted(pairs):
        cx, cy = f(x, y)
        body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="2.5" fill="{COLORS["ramp"]}"/>')
    return _doc(body)
