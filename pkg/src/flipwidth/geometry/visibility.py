"""Simple-polygon visibility realization of an interchange.

Lanes sit on ``y = 0``; each consecutive ramp is the apex of a triangle
above its two lanes and every other ramp the apex of a triangle below,
all lower apexes on one line.  The union of the triangles is a
y-monotone region between the upper zigzag and the lower envelope of the
hanging triangles, so it has no holes and its boundary is computed exactly
as a piecewise-linear envelope in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import ConstructionError, DomainError
from ..graphcore import Graph
from ..interchange import required_pairs
from .exact import (
    FILTER_EPS,
    in_closed_cone,
    on_segment,
    orient,
    orient_float,
    segments_cross_properly,
)
from .scene import Scene


@dataclass(frozen=True)
class Polygon:
    """Counterclockwise simple polygon with rational vertices."""

    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        V = self.vertices
        return [(V[k], V[(k + 1) % len(V)]) for k in range(len(V))]

    def signed_area2(self) -> Fraction:
        V = self.vertices
        return sum(V[k][0] * V[(k + 1) % len(V)][1] - V[(k + 1) % len(V)][0] * V[k][1]
                   for k in range(len(V)))

    def is_simple(self) -> bool:
        """No repeated vertices and no two non-adjacent edges touching."""
        V = self.vertices
        if len(set(V)) != len(V) or len(V) < 3:
            return False
        E = self.edges()
        m = len(E)
        for a in range(m):
            for b in range(a + 1, m):
                if b == a + 1 or (a == 0 and b == m - 1):
                    # adjacent edges may only share their common vertex
                    (p, q), (r, s) = E[a], E[b]
                    shared = q if b == a + 1 else p
                    other = s if b == a + 1 else r
                    far = p if b == a + 1 else q
                    if orient(far, shared, other) == 0 and (
                            on_segment(other, far, shared) or on_segment(far, shared, other)):
                        return False
                    continue
                (p, q), (r, s) = E[a], E[b]
                if (segments_cross_properly(p, q, r, s) or on_segment(r, p, q) or on_segment(s, p, q)
                        or on_segment(p, r, s) or on_segment(q, r, s)):
                    return False
        return True


def _lower_envelope(tris, x_lo, x_hi):
    """Breakpoints of ``min`` over the triangle bottoms on ``[x_lo, x_hi]``.

    Each triangle is ``(left_x, right_x, apex)`` hanging below ``y = 0``.
    """
    xs = {x_lo, x_hi}
    for a, b, (px, _) in tris:
        xs.update((a, b, px))
    xs = sorted(x for x in xs if x_lo <= x <= x_hi)

    def lines_on(x0, x1):
        out = []
        for a, b, (px, py) in tris:
            if a <= x0 and x1 <= b:
                if x1 <= px:
                    out.append(((py - 0) / (px - a), -a * py / (px - a)))
                else:
                    out.append(((0 - py) / (b - px), py - (0 - py) / (b - px) * px))
        return out

    pts = []
    for x0, x1 in zip(xs, xs[1:]):
        lines = lines_on(x0, x1)
        if not lines:
            raise ConstructionError(f"lower envelope has a gap on [{x0}, {x1}]")
        # lower envelope of lines on [x0, x1]: walk from x0 by the minimum line
        x = x0
        seg_pts = []
        cur = min(lines, key=lambda L: (L[0] * x0 + L[1], L[0]))
        seg_pts.append((x0, cur[0] * x0 + cur[1]))
        while True:
            best = None
            for L in lines:
                if L[0] < cur[0]:
                    xi = (L[1] - cur[1]) / (cur[0] - L[0])
                    if x < xi < x1 and (best is None or xi < best[0] or
                                        (xi == best[0] and L[0] < best[1][0])):
                        best = (xi, L)
            if best is None:
                break
            x, cur = best
            seg_pts.append((x, cur[0] * x + cur[1]))
        pts.extend(seg_pts)
    pts.append((x_hi, Fraction(0)))
    return pts


def _drop_collinear(points, keep):
    out = list(points)
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(out) and len(out) > 3:
            a, b, c = out[k - 1], out[k], out[(k + 1) % len(out)]
            if b not in keep and orient(a, b, c) == 0:
                del out[k]
                changed = True
            else:
                k += 1
    return out


def gen_visibility_polygon(n: int, h: Fraction = Fraction(2)) -> Scene:
    """Polygon scene: objects are polygon vertices, designated ones labelled.

    Lane ``i`` is ``(4i, 0)``, consecutive ramp ``(i, i+1)`` is
    ``(4i + 2, h)`` and ramp ``(i, j)`` with ``j - i >= 2`` is
    ``(2(i + j) + (j - i)/n, -h)``.  Needs ``n >= 5`` so that hanging
    triangles cover the whole lane line.
    """
    if n < 5:
        raise DomainError(f"visibility construction needs n >= 5, got {n}")
    h = Fraction(h)
    pairs = required_pairs(n, "weak")
    lane_pt = [(Fraction(4 * i), Fraction(0)) for i in range(n)]
    ramp_pt = {}
    tris = []
    for i, j in pairs:
        if j == i + 1:
            ramp_pt[(i, j)] = (Fraction(4 * i + 2), h)
        else:
            apex = (Fraction(2 * (i + j)) + Fraction(j - i, n), -h)
            ramp_pt[(i, j)] = apex
            tris.append((lane_pt[i][0], lane_pt[j][0], apex))
    if len(set(ramp_pt.values())) != len(ramp_pt):
        raise ConstructionError("two ramps share a point")
    bottom = _lower_envelope(tris, lane_pt[0][0], lane_pt[-1][0])
    top = []
    for i in range(n - 1, 0, -1):
        top.append(lane_pt[i])
        top.append(ramp_pt[(i - 1, i)])
    boundary = bottom[:-1] + top
    designated = set(lane_pt) | set(ramp_pt.values())
    boundary = _drop_collinear(boundary, designated)
    index = {p: k for k, p in enumerate(boundary)}
    missing = [p for p in designated if p not in index]
    if missing:
        raise ConstructionError(f"{len(missing)} designated points swallowed by the union")
    poly = Polygon(tuple(boundary))
    if poly.signed_area2() <= 0:
        raise ConstructionError("boundary is not counterclockwise")
    roles = ["plain"] * len(boundary)
    for p in lane_pt:
        roles[index[p]] = "lane"
    for p in ramp_pt.values():
        roles[index[p]] = "ramp"
    lanes = tuple(index[p] for p in lane_pt)
    ramps = {pair: index[p] for pair, p in ramp_pt.items()}
    return Scene("polygon", boundary, roles, lanes, ramps, meta={"h": h})


def visibility_graph(polygon: Polygon | Scene, vertices: Sequence[int] | None = None) -> Graph:
    """Visibility among chosen polygon vertices (indices into the boundary).

    ``p`` sees ``q`` iff the closed segment ``pq`` lies in the closed
    polygon: no boundary edge crosses it properly, and at ``p``, at ``q`` and
    at every boundary vertex on the open segment the segment leaves into
    the closed interior angle.  Vertex ``k`` of the result is
    ``vertices[k]``; by default all boundary vertices are used.
    """
    roles = None
    if isinstance(polygon, Scene):
        roles = polygon.roles
        polygon = Polygon(tuple(polygon.objects))
    V = polygon.vertices
    m = len(V)
    if vertices is None:
        vertices = list(range(m))
    vertices = list(vertices)
    F = np.array([[float(x), float(y)] for x, y in V])
    # exact predicates run on integers after clearing denominators
    L = math.lcm(*(Fraction(c).denominator for pt in V for c in pt))
    V = tuple((int(Fraction(x) * L), int(Fraction(y) * L)) for x, y in V)
    ex0, ey0 = F[:, 0], F[:, 1]
    ex1, ey1 = np.roll(ex0, -1), np.roll(ey0, -1)
    span = float(np.ptp(F[:, 0]) + np.ptp(F[:, 1])) or 1.0
    tol = FILTER_EPS * span * span
    edge_ids = np.arange(m)
    rows = [0] * len(vertices)
    for a, pi in enumerate(vertices):
        targets = vertices[a + 1:]
        if not targets:
            continue
        px, py = F[pi]
        T = np.array(targets)
        qx, qy = F[T, 0][:, None], F[T, 1][:, None]
        o1 = orient_float(px, py, qx, qy, ex0[None, :], ey0[None, :])
        o2 = orient_float(px, py, qx, qy, ex1[None, :], ey1[None, :])
        o3 = orient_float(ex0, ey0, ex1, ey1, px, py)[None, :]
        o4 = orient_float(ex0[None, :], ey0[None, :], ex1[None, :], ey1[None, :], qx, qy)
        separated = (((o1 > tol) & (o2 > tol)) | ((o1 < -tol) & (o2 < -tol))
                     | ((o3 > tol) & (o4 > tol)) | ((o3 < -tol) & (o4 < -tol)))
        # edges incident to p or q can only touch pq at that endpoint
        incident = ((edge_ids == pi) | ((edge_ids + 1) % m == pi))[None, :] \
            | (edge_ids[None, :] == T[:, None]) | (((edge_ids + 1) % m)[None, :] == T[:, None])
        sure_cross = ((o1 * o2 < 0) & (o3 * o4 < 0) & (np.abs(o1) > tol) & (np.abs(o2) > tol)
                      & (np.abs(o3) > tol) & (np.abs(o4) > tol))
        blocked = sure_cross.any(axis=1)
        unsure = ((np.abs(o1) <= tol) | (np.abs(o2) <= tol)
                  | (np.abs(o3) <= tol) | (np.abs(o4) <= tol))
        check = ~separated & ~incident & unsure
        near = np.abs(o1) <= tol
        for k in np.flatnonzero(~blocked):
            qi = int(T[k])
            if _sees(V, pi, qi, np.flatnonzero(check[k]), np.flatnonzero(near[k])):
                b = a + 1 + int(k)
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    sub_roles = tuple(roles[v] for v in vertices) if roles else None
    return Graph(len(vertices), tuple(rows), sub_roles)


def _sees(V, pi, qi, suspects, near) -> bool:
    m = len(V)
    p, q = V[pi], V[qi]
    for e in suspects:
        if segments_cross_properly(p, q, V[e], V[(e + 1) % m]):
            return False
    d = (q[0] - p[0], q[1] - p[1])
    back = (-d[0], -d[1])
    if not in_closed_cone(V[pi - 1], p, V[(pi + 1) % m], d):
        return False
    if not in_closed_cone(V[qi - 1], q, V[(qi + 1) % m], back):
        return False
    for w in near:
        w = int(w)
        if w in (pi, qi) or not on_segment(V[w], p, q):
            continue
        prev, nxt = V[w - 1], V[(w + 1) % m]
        if not (in_closed_cone(prev, V[w], nxt, d) and in_closed_cone(prev, V[w], nxt, back)):
            return False
    return True


def polygon_of(scene: Scene) -> Polygon:
    return Polygon(tuple(scene.objects))


def designated_view(scene: Scene):
    """Designated vertex indices plus lanes and ramps renumbered onto them."""
    keep = sorted(set(scene.lanes) | set(scene.ramps.values()))
    pos = {v: k for k, v in enumerate(keep)}
    return keep, tuple(pos[v] for v in scene.lanes), {p: pos[v] for p, v in scene.ramps.items()}
