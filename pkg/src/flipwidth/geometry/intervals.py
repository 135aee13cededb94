"""Interval-based realizations: intervals, containment, chords, segments, squares."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import ConstructionError, DomainError
from ..graphcore import Graph, mask_from_bool
from ..interchange import required_pairs
from .exact import segments_intersect
from .scene import Scene


def _check_n(n: int) -> None:
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")


def _rows_from_matrix(adj: np.ndarray) -> tuple[int, ...]:
    np.fill_diagonal(adj, False)
    return tuple(mask_from_bool(row) for row in adj)


def gen_intervals(n: int) -> Scene:
    """Lane ``i`` is ``[3i, 3i+1]``; ramp ``(i, j)`` is ``[3i - e, 3j + 1 + e]``.

    The offsets ``e`` are distinct rationals in ``(0, 1/2)``, so all
    endpoints are distinct.
    """
    _check_n(n)
    pairs = required_pairs(n, "weak")
    R = len(pairs)
    objects = [(Fraction(3 * i), Fraction(3 * i + 1)) for i in range(n)]
    for idx, (i, j) in enumerate(pairs):
        eps = Fraction(idx + 1, 2 * (R + 1))
        objects.append((3 * i - eps, 3 * j + 1 + eps))
    roles = ["lane"] * n + ["ramp"] * R
    ramps = {p: n + k for k, p in enumerate(pairs)}
    return Scene("intervals", objects, roles, tuple(range(n)), ramps)


def _interval_arrays(scene: Scene):
    # exact order is all that matters; Fractions compare exactly, so rank them
    values = sorted({x for lo_hi in scene.objects for x in lo_hi})
    rank = {x: k for k, x in enumerate(values)}
    lo = np.array([rank[a] for a, _ in scene.objects])
    hi = np.array([rank[b] for _, b in scene.objects])
    for a, b in scene.objects:
        if a > b:
            raise ConstructionError(f"interval [{a}, {b}] is reversed")
    return lo, hi


def interval_intersection_graph(scene: Scene) -> Graph:
    """Closed intervals sharing a point."""
    lo, hi = _interval_arrays(scene)
    adj = (lo[:, None] <= hi[None, :]) & (lo[None, :] <= hi[:, None])
    return Graph(len(lo), _rows_from_matrix(adj), scene.roles)


def interval_containment_graph(scene: Scene) -> Graph:
    """Edge iff one interval contains the other."""
    lo, hi = _interval_arrays(scene)
    contains = (lo[:, None] <= lo[None, :]) & (hi[None, :] <= hi[:, None])
    return Graph(len(lo), _rows_from_matrix(contains | contains.T), scene.roles)


def permutation_to_chords(scene: Scene) -> Scene:
    """Two-arc chord diagram whose crossings are exactly the containments.

    Left endpoints go on the circle in order at positions ``0..m-1``; the
    right endpoint of rank ``rho`` goes to position ``2m-1-rho``.
    """
    if scene.kind != "intervals":
        raise DomainError("permutation_to_chords expects an interval scene")
    m = len(scene.objects)
    left_rank = {k: r for r, k in enumerate(sorted(range(m), key=lambda k: scene.objects[k][0]))}
    right_rank = {k: r for r, k in enumerate(sorted(range(m), key=lambda k: scene.objects[k][1]))}
    chords = [(left_rank[k], 2 * m - 1 - right_rank[k]) for k in range(m)]
    return Scene("chords", chords, scene.roles, scene.lanes, scene.ramps, scene.mode,
                 {"positions": 2 * m})


def chord_intersection_graph(scene: Scene) -> Graph:
    """Chords (pairs of distinct circle positions) cross iff their endpoints interleave."""
    a = np.array([min(c) for c in scene.objects])
    b = np.array([max(c) for c in scene.objects])
    inside = lambda x: (a[:, None] < x[None, :]) & (x[None, :] < b[:, None])  # noqa: E731
    cross = inside(a) ^ inside(b)
    return Graph(len(a), _rows_from_matrix(cross | cross.T), scene.roles)


def gen_segments(n: int) -> Scene:
    """Vertical lanes at ``x = 3i + 1/2``, horizontal ramps at distinct heights."""
    _check_n(n)
    pairs = required_pairs(n, "weak")
    R = len(pairs)
    H = Fraction(R + 1)
    half = Fraction(1, 2)
    objects = [((3 * i + half, Fraction(0)), (3 * i + half, H)) for i in range(n)]
    for idx, (i, j) in enumerate(pairs):
        eps = Fraction(idx + 1, 2 * (R + 1))
        y = Fraction(idx + 1)
        objects.append(((3 * i - eps, y), (3 * j + 1 + eps, y)))
    roles = ["lane"] * n + ["ramp"] * R
    ramps = {p: n + k for k, p in enumerate(pairs)}
    return Scene("segments", objects, roles, tuple(range(n)), ramps)


def segment_intersection_graph(scene: Scene) -> Graph:
    """Closed segments sharing a point (exact rational test)."""
    segs = scene.objects
    m = len(segs)
    # bounding-box prefilter, exact on rationals
    x0 = [min(s[0][0], s[1][0]) for s in segs]
    x1 = [max(s[0][0], s[1][0]) for s in segs]
    y0 = [min(s[0][1], s[1][1]) for s in segs]
    y1 = [max(s[0][1], s[1][1]) for s in segs]
    rows = [0] * m
    for u in range(m):
        for v in range(u + 1, m):
            if x0[u] > x1[v] or x0[v] > x1[u] or y0[u] > y1[v] or y0[v] > y1[u]:
                continue
            if segments_intersect(segs[u][0], segs[u][1], segs[v][0], segs[v][1]):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(m, tuple(rows), scene.roles)


def gen_unit_squares(n: int) -> Scene:
    """Unit squares hugging the diagonal, built from the interval scene.

    The intervals are first scaled by ``1/(3n)`` so each is shorter than 1;
    interval ``[a, b]`` then gives a lane square ``[a, a+1] x [b-1, b]`` below
    the line ``y = x`` or a ramp square ``[b-1, b] x [a, a+1]`` above it.
    """
    base = gen_intervals(n)
    scale = Fraction(1, 3 * n)
    objects = []
    for (a, b), role in zip(base.objects, base.roles):
        a, b = a * scale, b * scale
        if b - a >= 1:
            raise ConstructionError(f"interval [{a}, {b}] too long for unit squares")
        if role == "lane":
            objects.append(((a, b - 1), (a + 1, b)))
        else:
            objects.append(((b - 1, a), (b, a + 1)))
    return Scene("squares", objects, base.roles, base.lanes, base.ramps, base.mode)


def square_intersection_graph(scene: Scene) -> Graph:
    """Closed axis-aligned squares (given as lower-left, upper-right corners)."""
    values = sorted({c for sq in scene.objects for p in sq for c in p})
    rank = {x: k for k, x in enumerate(values)}
    arr = np.array([[rank[sq[0][0]], rank[sq[0][1]], rank[sq[1][0]], rank[sq[1][1]]]
                    for sq in scene.objects]).reshape(-1, 4)
    x0, y0, x1, y1 = arr.T
    adj = ((x0[:, None] <= x1[None, :]) & (x0[None, :] <= x1[:, None])
           & (y0[:, None] <= y1[None, :]) & (y0[None, :] <= y1[:, None]))
    return Graph(len(arr), _rows_from_matrix(adj), scene.roles)
