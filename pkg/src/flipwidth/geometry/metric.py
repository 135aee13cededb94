"""Point realizations: unit distance graphs, unit disk graphs, lune-based beta-skeletons."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import ConstructionError, DomainError
from ..graphcore import Graph, mask_from_bool
from ..interchange import optional_incidence_kind, required_pairs
from .scene import Scene

UNIT_TOL = 1e-9


def _check_n(n: int) -> None:
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")


def _pairwise_dist(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    diff = P[:, None, :] - P[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1))


def _graph_from_adj(adj: np.ndarray, roles) -> Graph:
    np.fill_diagonal(adj, False)
    return Graph(len(adj), tuple(mask_from_bool(r) for r in adj), tuple(roles) if roles else None)


# -- unit distance / unit disk -------------------------------------------

def gen_unit_distance(n: int) -> Scene:
    """Lanes equally spaced on a segment of length < 2; ramp ``(i, j)`` at the
    upper intersection of the unit circles about lanes ``i`` and ``j``."""
    _check_n(n)
    delta = 19 / (10 * (n - 1))
    pairs = required_pairs(n, "weak")
    pts = [(i * delta, 0.0) for i in range(n)]
    for i, j in pairs:
        half = (j - i) * delta / 2
        pts.append(((i + j) * delta / 2, math.sqrt(1 - half * half)))
    roles = ["lane"] * n + ["ramp"] * len(pairs)
    ramps = {p: n + k for k, p in enumerate(pairs)}
    return Scene("points2d", pts, roles, tuple(range(n)), ramps, meta={"delta": delta})


def unit_distance_graph(scene_or_points, tol: float = UNIT_TOL, roles=None) -> Graph:
    """Edge iff ``|d - 1| <= tol``."""
    pts, roles = _points_roles(scene_or_points, roles)
    adj = np.abs(_pairwise_dist(pts) - 1.0) <= tol
    return _graph_from_adj(adj, roles)


def gen_unit_disks(n: int) -> Scene:
    """The unit-distance points scaled by two (disks of radius 1 touch at distance 2)."""
    s = gen_unit_distance(n)
    pts = [(2 * x, 2 * y) for x, y in s.objects]
    return Scene("points2d", pts, s.roles, s.lanes, s.ramps, s.mode, {"scale": 2})


def unit_disk_graph(scene_or_points, tol: float = UNIT_TOL, roles=None) -> Graph:
    """Closed unit disks: edge iff ``d <= 2 + tol``."""
    pts, roles = _points_roles(scene_or_points, roles)
    adj = _pairwise_dist(pts) <= 2.0 + tol
    return _graph_from_adj(adj, roles)


def _points_roles(scene_or_points, roles):
    if isinstance(scene_or_points, Scene):
        return [tuple(float(c) for c in p) for p in scene_or_points.objects], scene_or_points.roles
    return [tuple(float(c) for c in p) for p in scene_or_points], roles


# -- beta-skeleton --------------------------------------------------------

def _beta_fraction(beta) -> Fraction:
    b = Fraction(str(beta)) if isinstance(beta, float) else Fraction(beta)
    if not 0 < b < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    return b


def lune_contains(u, v, p, beta) -> bool:
    """Exact closed-lune membership for rational points.

    With ``m`` the midpoint of ``uv``, ``d = |uv|`` and ``k^2 = 1/beta^2 - 1``,
    the point lies in both disks iff ``|p-m|^2 - d^2/4 + k |(v-u) x (p-m)| <= 0``.
    """
    b = _beta_fraction(beta)
    k2 = 1 / (b * b) - 1
    u = tuple(Fraction(c) for c in u)
    v = tuple(Fraction(c) for c in v)
    p = tuple(Fraction(c) for c in p)
    mx, my = (u[0] + v[0]) / 2, (u[1] + v[1]) / 2
    dx, dy = v[0] - u[0], v[1] - u[1]
    px, py = p[0] - mx, p[1] - my
    A = px * px + py * py - (dx * dx + dy * dy) / 4
    B = dx * py - dy * px
    return A <= 0 and A * A >= k2 * B * B


def beta_skeleton_graph(scene_or_points, beta, roles=None) -> Graph:
    """Edge ``uv`` iff the closed lune of ``uv`` holds no other input point.

    Float evaluation with an exact rational fallback for near-boundary
    cases; exact whenever the inputs are rationals (or floats, taken at
    face value).
    """
    if isinstance(scene_or_points, Scene):
        raw, roles = list(scene_or_points.objects), scene_or_points.roles
    else:
        raw = list(scene_or_points)
    b = _beta_fraction(beta)
    k = math.sqrt(float(1 / (b * b) - 1))
    P = np.array([[float(c) for c in p] for p in raw], dtype=float)
    N = len(P)
    adj = np.zeros((N, N), dtype=bool)
    idx = np.arange(N)
    X, Y = P[:, 0], P[:, 1]
    for u in range(N):
        vs = idx[u + 1:]
        if not len(vs):
            continue
        Dx, Dy = (X[vs] - X[u])[:, None], (Y[vs] - Y[u])[:, None]
        Qx = X[None, :] - ((X[vs] + X[u]) / 2)[:, None]
        Qy = Y[None, :] - ((Y[vs] + Y[u]) / 2)[:, None]
        q2 = Qx * Qx + Qy * Qy
        d2 = Dx * Dx + Dy * Dy
        val = q2 - d2 / 4 + k * np.abs(Dx * Qy - Dy * Qx)
        tol = 1e-9 * (q2 + d2)
        inside = val < -tol
        unsure = np.abs(val) <= tol
        inside[:, u] = False
        unsure[:, u] = False
        inside[np.arange(len(vs)), vs] = False
        unsure[np.arange(len(vs)), vs] = False
        blocked = inside.any(axis=1)
        for a in np.flatnonzero(~blocked & unsure.any(axis=1)):
            v = int(vs[a])
            for w in np.flatnonzero(unsure[a]):
                if lune_contains(raw[u], raw[v], raw[int(w)], b):
                    blocked[a] = True
                    break
        adj[u, vs] = ~blocked
    adj |= adj.T
    return _graph_from_adj(adj, roles)


def _lune_slice(u, v, y: float, beta: float) -> tuple[float, float] | None:
    """x-interval of the closed lune of ``uv`` on the horizontal line at height *y*."""
    (ux, uy), (vx, vy) = u, v
    d = math.hypot(vx - ux, vy - uy)
    R = d / (2 * beta)
    h = math.sqrt(max(R * R - d * d / 4, 0.0))
    mx, my = (ux + vx) / 2, (uy + vy) / 2
    nx, ny = -(vy - uy) / d, (vx - ux) / d
    lo, hi = -math.inf, math.inf
    for sgn in (1, -1):
        cx, cy = mx + sgn * h * nx, my + sgn * h * ny
        rem = R * R - (y - cy) ** 2
        if rem < 0:
            return None
        r = math.sqrt(rem)
        lo, hi = max(lo, cx - r), min(hi, cx + r)
    return (lo, hi) if lo <= hi else None


def gen_beta_skeleton(n: int, beta=0.9, eps_divisor: int = 64, attempts: int = 6) -> Scene:
    return beta_construction(n, beta, eps_divisor, attempts)[0]


def beta_construction(n: int, beta=0.9, eps_divisor: int = 64,
                      attempts: int = 6) -> tuple[Scene, Graph]:
    """Scene of :func:`gen_beta_skeleton` together with its validated graph.

    Lanes on ``y = 0`` and ramps on ``y = 1``, both bunched near ``x = 0``,
    plus two blockers per ramp on ``y = 1 - eps``.

    The blockers of ramp ``(i, j)`` sit just left of the lune to lane ``i``
    and just right of the lune to lane ``j``, so lunes to lanes outside the
    range are occupied.  ``eps`` is halved until the designated vertices
    validate as an interchange with every optional lane-ramp edge.
    """
    _check_n(n)
    b = _beta_fraction(beta)
    bf = float(b)
    pairs = required_pairs(n, "weak")
    R = len(pairs)
    s = Fraction(1, 20 * n)
    S = Fraction(1, 20 * R)
    lanes = [(i * s, Fraction(0)) for i in range(n)]
    ramps = [(k * S, Fraction(1)) for k in range(R)]
    roles = ["lane"] * n + ["ramp"] * R + ["blocker"] * (2 * R)
    ramp_map = {p: n + k for k, p in enumerate(pairs)}
    eps = S / eps_divisor
    last = None
    for _ in range(attempts):
        y = 1 - eps
        yf = float(y)
        blockers = []
        for k, (i, j) in enumerate(pairs):
            r = tuple(float(c) for c in ramps[k])
            left = _lune_slice(r, tuple(map(float, lanes[i])), yf, bf)
            right = _lune_slice(r, tuple(map(float, lanes[j])), yf, bf)
            if left is None or right is None:
                raise ConstructionError(f"lune of ramp {(i, j)} misses the blocker line")
            margin = float(eps * s) / 4
            blockers.append((Fraction(left[0] - margin), y))
            blockers.append((Fraction(right[1] + margin), y))
        scene = Scene("points2d", lanes + ramps + blockers, roles, tuple(range(n)), ramp_map,
                      meta={"beta": str(b), "eps": eps})
        g = beta_skeleton_graph(scene, b)
        last = scene.violations(g)
        kind = _incidence(scene, g)
        if not last and kind == "dense":
            return scene, g
        eps /= 2
    raise ConstructionError(
        f"beta-skeleton search failed for n={n}, beta={beta}: "
        f"{len(last or [])} violations, e.g. {[str(v) for v in (last or [])[:3]]}")


def _incidence(scene: Scene, g: Graph) -> str:
    return optional_incidence_kind(scene.interchange(g))
