"""Exact rational predicates with float filters for vectorized use."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

Point = tuple[Fraction, Fraction]

# relative threshold below which a float orientation is recomputed exactly
FILTER_EPS = 1e-9


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def orient(a, b, c) -> int:
    """Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def on_segment(p, a, b) -> bool:
    """Closed segment membership of *p* (exact)."""
    return (orient(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Whether the closed segments ab and cd share a point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d))


def segments_cross_properly(a, b, c, d) -> bool:
    """Interiors cross at a single point that is an endpoint of neither."""
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def in_closed_cone(prev, w, nxt, direction) -> bool:
    """Whether *direction* from polygon vertex *w* points into the closed interior angle.

    The polygon is counterclockwise with ``prev -> w -> nxt``; the interior
    lies to the left of both edges.
    """
    target = (w[0] + direction[0], w[1] + direction[1])
    if orient(prev, w, nxt) >= 0:  # convex (or straight) corner
        return orient(w, nxt, target) >= 0 and orient(prev, w, target) >= 0
    # reflex corner: everything except the open exterior wedge
    return not (orient(w, nxt, target) < 0 and orient(prev, w, target) < 0)


def orient_float(ax, ay, bx, by, cx, cy):
    """Vectorized float cross products; broadcasts over numpy arrays."""
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def as_float_array(points: Sequence[Sequence[Fraction]]) -> np.ndarray:
    return np.array([[float(c) for c in p] for p in points], dtype=float)
