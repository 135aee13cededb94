"""Exact flip-width of tiny graphs by attractor computation.

A position is the currently flipped graph ``H`` together with the robber's
vertex, cops to move.  Only the flipped graph matters (not which flips
produced it), so positions are deduplicated by their adjacency rows.  The
cops win from ``(H, v)`` iff some reachable flipped graph ``H'`` isolates,
or leads to a winning position for, every vertex within distance ``r`` of
``v`` in ``H``.
"""

from __future__ import annotations

import math

from ..errors import DomainError, ResourceLimitError
from ..graphcore import EMPTY, Graph, reachable_mask

DEFAULT_MAX_STATES = 250_000


def _flip_rows(rows: tuple[int, ...], subset: int) -> tuple[int, ...]:
    return tuple(
        (row ^ subset) & ~(1 << u) if subset >> u & 1 else row
        for u, row in enumerate(rows)
    )


def flipped_graphs(g: Graph, t: int, max_states: int = DEFAULT_MAX_STATES) -> list[tuple[int, ...]]:
    """All distinct graphs obtainable from ``g`` with at most ``t`` flips; ``g`` first."""
    n = g.n
    subsets = [s for s in range(1, 1 << n) if s.bit_count() >= 2]
    seen = {g.rows: 0}
    order = [g.rows]
    layer = [g.rows]
    for _ in range(t):
        nxt = []
        for rows in layer:
            for s in subsets:
                h = _flip_rows(rows, s)
                if h not in seen:
                    seen[h] = len(order)
                    order.append(h)
                    nxt.append(h)
                    if len(order) * max(n, 1) > max_states:
                        raise ResourceLimitError(
                            f"more than {max_states} positions (n={n}, t={t})")
        layer = nxt
    return order


def cops_win(g: Graph, r, t: int, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Whether ``t`` flips per move catch a radius-``r`` robber from every start."""
    n = g.n
    if n == 0:
        return True
    if r is not None and math.isinf(r):
        r = None
    graphs = flipped_graphs(g, t, max_states)
    hs = [Graph(n, rows) for rows in graphs]
    iso = [sum(1 << v for v in range(n) if rows[v] == 0) for rows in graphs]
    balls = [[reachable_mask(h, EMPTY, v, r) for v in range(n)] for h in hs]
    win = [0] * len(graphs)
    full = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        good = [iso[k] | win[k] for k in range(len(graphs))]
        verdict: dict[int, bool] = {}
        for k in range(len(graphs)):
            if win[k] == full:
                continue
            for v in range(n):
                if win[k] >> v & 1:
                    continue
                ball = balls[k][v]
                ok = verdict.get(ball)
                if ok is None:
                    ok = any(ball & ~gd == 0 for gd in good)
                    verdict[ball] = ok
                if ok:
                    win[k] |= 1 << v
                    changed = True
    return win[0] == full


def exact_flip_width(g: Graph, r=1, t_max: int = 1,
                     max_states: int = DEFAULT_MAX_STATES) -> int | None:
    """Least ``t <= t_max`` with which the cops win, or ``None`` meaning ``> t_max``."""
    if t_max < 0:
        raise DomainError("t_max must be >= 0")
    for t in range(t_max + 1):
        if cops_win(g, r, t, max_states):
            return t
    return None
