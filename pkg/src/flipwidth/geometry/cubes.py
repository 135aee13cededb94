"""Hypercubes, subdivided complete graphs and rectangle-of-influence point sets."""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import ConstructionError, DomainError
from ..graphcore import Graph, mask_from_bool
from ..interchange import Interchange


def gen_hypercube(d: int) -> Graph:
    """``Q_d`` on vertices ``0..2^d-1``; adjacent iff the labels differ in one bit."""
    if d < 0:
        raise DomainError("dimension must be >= 0")
    N = 1 << d
    rows = tuple(sum(1 << (v ^ (1 << b)) for b in range(d)) for v in range(N))
    return Graph(N, rows)


def hypercube_interchange(d: int) -> Interchange:
    """Singletons as lanes, two-element sets as ramps, inside ``Q_d``.

    Vertex ids are the bitmask labels, so the result is an induced subgraph
    of :func:`gen_hypercube`; it is a strong interchange of order ``d``
    without optional lane-ramp edges.
    """
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    labels = [1 << i for i in range(d)]
    pairs = list(itertools.combinations(range(d), 2))
    labels += [(1 << i) | (1 << j) for i, j in pairs]
    g = gen_hypercube(d).induced_subgraph(labels)
    roles = ["lane"] * d + ["ramp"] * len(pairs)
    ramps = {p: d + k for k, p in enumerate(pairs)}
    return Interchange(g.with_labels(roles=roles), tuple(range(d)), ramps, "strong")


def gen_subdivided_complete(n: int) -> Interchange:
    """``K_n`` with every edge subdivided once: lanes are the original vertices."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    edges = []
    for k, (i, j) in enumerate(pairs):
        edges += [(i, n + k), (j, n + k)]
    roles = ["lane"] * n + ["ramp"] * len(pairs)
    g = Graph.from_edges(n + len(pairs), edges, roles=roles)
    return Interchange(g, tuple(range(n)), {p: n + k for k, p in enumerate(pairs)}, "strong")


def gen_subdivided_bipartite(a: int, b: int) -> Graph:
    """Subdivision of ``K_{a,b}``: sides ``0..a-1`` and ``a..a+b-1``, then one
    vertex per edge in row-major order of ``(left, right)``."""
    if a < 1 or b < 1:
        raise DomainError("both sides must be non-empty")
    edges = []
    for i in range(a):
        for j in range(b):
            mid = a + b + i * b + j
            edges += [(i, mid), (a + j, mid)]
    return Graph.from_edges(a + b + a * b, edges)


# -- rectangle of influence ------------------------------------------------

def _rig_raw(d: int):
    """Points, plus the hypercube label of each point of ``Y_d`` (None otherwise)."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    pts = [(0, 0), (1, 1)]
    labels: list[int | None] = [0, 1]
    for level in range(1, d):
        width = max(x for x, _ in pts) + 1
        ys = [(p, lab) for p, lab in zip(pts, labels) if lab is not None]
        top = max(p[1] for p, _ in ys)
        mid = [(p, lab) for p, lab in ys if p[1] != top]
        mid_width = max(p[0] for p, _ in ys) + 1

        new_pts, new_labels = [], []
        for (x, y), lab in zip(pts, labels):
            new_pts.append((x, 3 * y))
            new_labels.append(lab)
        for (x, y), _ in mid:
            new_pts.append((width + x, 3 * y + 2))
            new_labels.append(None)
        off = width + mid_width
        for (x, y), lab in zip(pts, labels):
            new_pts.append((off + x, 3 * y + 1))
            new_labels.append(None if lab is None else lab | (1 << level))
        pts, labels = new_pts, new_labels
    return pts, labels


def _compact(pts):
    xs = {x: k for k, x in enumerate(sorted({x for x, _ in pts}))}
    ys = {y: k for k, y in enumerate(sorted({y for _, y in pts}))}
    return [(xs[x], ys[y]) for x, y in pts]


def gen_rig_points(d: int, compact: bool = True):
    """``(X_d, Y_d)``: integer points and the indices inducing ``Q_d``.

    ``Y_d`` is ordered by hypercube label, so ``Y_d[b]`` plays vertex ``b``.
    Raises :class:`ConstructionError` on a repeated x or y coordinate.
    """
    pts, labels = _rig_raw(d)
    if len({x for x, _ in pts}) != len(pts) or len({y for _, y in pts}) != len(pts):
        raise ConstructionError("rectangle-of-influence points share a coordinate")
    if compact:
        pts = _compact(pts)
    Y = sorted((lab, k) for k, lab in enumerate(labels) if lab is not None)
    if [lab for lab, _ in Y] != list(range(1 << d)):
        raise ConstructionError("hypercube labels are not a bijection")
    return pts, [k for _, k in Y]


def rig_graph(points) -> Graph:
    """Edge ``uv`` iff the open axis-aligned rectangle spanned by ``u, v`` holds no other point."""
    P = np.array(points, dtype=object if _needs_object(points) else np.int64).reshape(-1, 2)
    N = len(P)
    X, Y = P[:, 0], P[:, 1]
    rows = []
    for u in range(N):
        lox, hix = np.minimum(X[u], X), np.maximum(X[u], X)
        loy, hiy = np.minimum(Y[u], Y), np.maximum(Y[u], Y)
        inside = ((lox[:, None] < X[None, :]) & (X[None, :] < hix[:, None])
                  & (loy[:, None] < Y[None, :]) & (Y[None, :] < hiy[:, None]))
        adj = ~inside.any(axis=1)
        adj[u] = False
        rows.append(mask_from_bool(adj))
    return Graph(N, tuple(rows))


def _needs_object(points) -> bool:
    return any(not isinstance(c, (int, np.integer)) for p in points for c in p)
