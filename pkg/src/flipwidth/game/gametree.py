"""Exhaustive game-tree search, kept deliberately naive as a cross-check.

Positions are ``(active flip collection, robber vertex)`` with collections
enumerated literally (as sets of vertex subsets, no deduplication of the
resulting graphs).  The value is computed by depth-bounded minimax: the
cops win within ``d`` rounds from a position if some announcement makes
every robber reply either land on an isolated vertex or in a position won
within ``d - 1`` rounds.  Iterating ``d`` until nothing changes gives the
unbounded game.
"""

from __future__ import annotations

import itertools

from ..errors import ResourceLimitError
from ..graphcore import EMPTY, FlipCollection, Graph, apply_flips, reachable


def _collections(n: int, t: int, limit: int) -> list[FlipCollection]:
    subsets = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    out, seen = [], set()
    for size in range(t + 1):
        for combo in itertools.combinations_with_replacement(subsets, size):
            fc = FlipCollection(combo)
            if fc not in seen:
                seen.add(fc)
                out.append(fc)
                if len(out) > limit:
                    raise ResourceLimitError(f"more than {limit} flip collections")
    return out


def game_tree_cops_win(g: Graph, r, t: int, limit: int = 5000) -> bool:
    """Whether ``t`` flips per round catch a radius-``r`` robber (``r=None`` for infinity)."""
    n = g.n
    if n == 0:
        return True
    colls = _collections(n, t, limit)
    graphs = {fc: apply_flips(g, fc) for fc in colls}
    balls = {fc: [reachable(graphs[fc], EMPTY, v, r) for v in range(n)] for fc in colls}
    isolated = {fc: {v for v in range(n) if graphs[fc].degree(v) == 0} for fc in colls}
    won: set[tuple[FlipCollection, int]] = set()
    while True:
        new = set()
        for fc in colls:
            for v in range(n):
                if (fc, v) in won:
                    continue
                for nxt in colls:
                    if all(w in isolated[nxt] or (nxt, w) in won for w in balls[fc][v]):
                        new.add((fc, v))
                        break
        if not new:
            break
        won |= new
    empty = FlipCollection()
    return all((empty, v) in won for v in range(n))


def game_tree_flip_width(g: Graph, r=1, t_max: int = 1, limit: int = 5000) -> int | None:
    for t in range(t_max + 1):
        if game_tree_cops_win(g, r, t, limit):
            return t
    return None
