"""Torus-grid points on the 3-sphere, stereographic projection, brute-force 3D Delaunay."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..errors import ConstructionError, DomainError
from ..graphcore import Graph, mask_from_bool
from .scene import Scene

INSPHERE_TOL = 1e-9
PERTURBATION = 1e-6


def gen_delaunay_points(n: int) -> Scene:
    """``n``-gon in the first complex plane, ``n``-gon in the second, then the
    ``n x n`` torus grid in row-major ``(i, j)`` order; all on the unit sphere."""
    if n < 4 or n % 2:
        raise DomainError(f"n must be even and >= 4, got {n}")
    ang = [2 * math.pi * k / n for k in range(n)]
    pts = [(math.cos(a), math.sin(a), 0.0, 0.0) for a in ang]
    pts += [(0.0, 0.0, math.cos(a), math.sin(a)) for a in ang]
    r = 1 / math.sqrt(2)
    for i in range(n):
        for j in range(n):
            pts.append((r * math.cos(ang[i]), r * math.sin(ang[i]),
                        r * math.cos(ang[j]), r * math.sin(ang[j])))
    roles = ["plain"] * len(pts)
    return Scene("points4d", pts, roles, meta={"n": n})


def torus_pole(n: int) -> np.ndarray:
    """Unit vector through the centre of the grid square with corners ``(0..1, 0..1)``."""
    a = math.pi / n
    r = 1 / math.sqrt(2)
    return np.array([r * math.cos(a), r * math.sin(a), r * math.cos(a), r * math.sin(a)])


def _complement_basis(pole: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to *pole* (Gram-Schmidt)."""
    basis = [pole / np.linalg.norm(pole)]
    for e in np.eye(len(pole)):
        v = e - sum(np.dot(e, b) * b for b in basis)
        if np.linalg.norm(v) > 1e-8:
            basis.append(v / np.linalg.norm(v))
        if len(basis) == len(pole):
            break
    return np.array(basis[1:])


def stereographic_project(points4d, pole) -> np.ndarray:
    """Project the unit sphere from *pole* onto the tangent hyperplane at ``-pole``.

    Returns coordinates in an orthonormal frame of that hyperplane, centred
    at ``-pole``.
    """
    X = np.asarray(points4d, dtype=float)
    P = np.asarray(pole, dtype=float)
    denom = 1 - X @ P
    if np.any(np.abs(denom) < 1e-12):
        raise ConstructionError("a point coincides with the projection pole")
    Y = P + 2 * (X - P) / denom[:, None]
    return (Y + P) @ _complement_basis(P).T


def _normalize(P: np.ndarray) -> np.ndarray:
    lo, hi = P.min(axis=0), P.max(axis=0)
    return (P - lo) / float((hi - lo).max())


def delaunay_graph_bruteforce(points3d, perturb_seed: int = 0, attempts: int = 2,
                              chunk: int = 20000) -> Graph:
    """Union of the edges of every empty-circumsphere tetrahedron.

    Points are normalized to the unit box and jittered by seeded uniform
    noise of size ``1e-6``.  Points within ``1e-9`` of a lifted
    circumsphere hyperplane are settled exactly on the perturbed
    coordinates; an exactly cospherical configuration triggers a retry
    with the next seed.
    """
    base = _normalize(np.asarray(points3d, dtype=float))
    m = len(base)
    if m < 4:
        return Graph.empty(m)
    quads = np.array(list(itertools.combinations(range(m), 4)), dtype=np.int64)
    for attempt in range(attempts):
        rng = np.random.default_rng(perturb_seed + attempt)
        P = base + rng.uniform(-PERTURBATION, PERTURBATION, base.shape)
        result = _sweep(P, quads, chunk)
        if result is not None:
            return result
    raise ConstructionError(f"degenerate circumspheres after {attempts} perturbation seeds")


def _sweep(P: np.ndarray, quads: np.ndarray, chunk: int) -> Graph | None:
    m = len(P)
    lifted = np.hstack([P, (P ** 2).sum(axis=1, keepdims=True)])
    adj = np.zeros((m, m), dtype=bool)
    for start in range(0, len(quads), chunk):
        Q = quads[start:start + chunk]
        base = lifted[Q[:, 0]]
        E = lifted[Q[:, 1:]] - base[:, None, :]  # (c, 3, 4)
        # normal of the lifted hyperplane via 3x3 cofactors
        normal = np.empty((len(Q), 4))
        for k in range(4):
            cols = [c for c in range(4) if c != k]
            normal[:, k] = (-1) ** k * np.linalg.det(E[:, :, cols])
        normal[normal[:, 3] < 0] *= -1
        normal /= np.linalg.norm(normal, axis=1, keepdims=True)
        side = (lifted[None, :, :] - base[:, None, :]) @ normal[:, :, None]
        side = side[..., 0]  # (c, m): negative means strictly inside the circumsphere
        rows = np.arange(len(Q))[:, None]
        side[rows, Q] = np.inf
        empty = (side > INSPHERE_TOL).all(axis=1)
        unsure = ~empty & (side >= -INSPHERE_TOL).all(axis=1)
        for r in np.flatnonzero(unsure):
            verdict = _exact_empty(P, Q[r], np.flatnonzero(np.abs(side[r]) <= INSPHERE_TOL))
            if verdict is None:
                return None
            empty[r] = verdict
        for quad in Q[empty]:
            for a, b in itertools.combinations(quad, 2):
                adj[a, b] = adj[b, a] = True
    return Graph(m, tuple(mask_from_bool(r) for r in adj))


def _exact_empty(P: np.ndarray, quad, suspects) -> bool | None:
    """Exact insphere test of the suspects against *quad*; None if some is cospherical."""
    pts = [[Fraction(float(c)) for c in P[k]] for k in quad]
    a = pts[0]
    E = [[p[c] - a[c] for c in range(3)] for p in pts[1:]]
    o3 = _det([row[:] for row in E])
    if o3 == 0:
        return None
    la = sum(c * c for c in a)
    lifted = [row + [sum(c * c for c in p) - la] for row, p in zip(E, pts[1:])]
    for k in suspects:
        p = [Fraction(float(c)) for c in P[k]]
        w = [p[c] - a[c] for c in range(3)] + [sum(c * c for c in p) - la]
        d4 = _det(lifted + [w])
        if d4 == 0:
            return None
        if (o3 > 0) != (d4 > 0):  # strictly inside
            return False
    return True


def _det(M) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination (destroys *M*)."""
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det


def grid_index(n: int, i: int, j: int) -> int:
    return 2 * n + i * n + j


def even_vertices(n: int) -> list[int]:
    """Even-indexed points of both ``n``-gons, then even-even grid points."""
    return ([i for i in range(0, n, 2)] + [n + j for j in range(0, n, 2)]
            + [grid_index(n, i, j) for i in range(0, n, 2) for j in range(0, n, 2)])


def even_subgraph(n: int, graph: Graph) -> Graph:
    """Induced subgraph on :func:`even_vertices`, in that order."""
    return graph.induced_subgraph(even_vertices(n))


def delaunay_graph(n: int, perturb_seed: int = 0) -> Graph:
    """Delaunay graph of the projected torus-grid construction for parameter *n*."""
    scene = gen_delaunay_points(n)
    P3 = stereographic_project(scene.objects, torus_pole(n))
    return delaunay_graph_bruteforce(P3, perturb_seed)
