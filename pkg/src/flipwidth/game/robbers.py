"""Robber strategies: the interchange escape, the diverse-subgraph escape, baselines."""

from __future__ import annotations

from collections import OrderedDict
from typing import Mapping, Sequence

import numpy as np

from ..errors import ContractError, StrategyFault
from ..graphcore import (
    EMPTY,
    FlipCollection,
    Graph,
    flipped_row,
    mask_of,
    members_of,
)
from ..interchange import Interchange, flipped_lane_ramp, lane_reach_matrix
from .engine import GameConfig, GameState, RobberStrategy


class InterchangeRobber(RobberStrategy):
    """Stay on lanes; each move goes to the reachable lane with the largest
    post-announcement reach (lanes within two lane-ramp steps).

    Candidates are the lanes joined to the current lane by a lane-ramp-lane
    path in the currently flipped graph (or the current lane itself); ties
    go to the smallest lane index.  Needs radius at least 2.
    """

    name = "interchange"

    def __init__(self, ic: Interchange):
        self.ic = ic
        self._cache: OrderedDict = OrderedDict()

    def _flipped(self, flips: FlipCollection):
        key = flips.key
        if key not in self._cache:
            M = flipped_lane_ramp(self.ic, flips)
            self._cache[key] = (M, lane_reach_matrix(self.ic, flips, M))
            while len(self._cache) > 4:
                self._cache.popitem(last=False)
        return self._cache[key]

    def start(self, graph: Graph, config: GameConfig) -> int:
        if config.r is not None and config.r < 2:
            raise ContractError("the interchange robber needs radius >= 2")
        _, reach = self._flipped(EMPTY)
        return self.ic.lanes[int(np.argmax(reach.sum(axis=1)))]

    def move(self, state: GameState, announced: FlipCollection):
        lane = self.ic.lane_index.get(state.robber)
        if lane is None:
            raise StrategyFault("robber", f"robber left the lanes (at vertex {state.robber})")
        M_now, reach_now = self._flipped(state.active)
        _, reach_next = self._flipped(announced)
        candidates = np.flatnonzero(reach_now[lane])
        scores = reach_next.sum(axis=1)[candidates]
        target = int(candidates[int(np.argmax(scores))])
        if target == lane:
            return [state.robber]
        via = int(np.flatnonzero(M_now[lane] & M_now[target])[0])
        return [state.robber, int(self.ic.ramp_ids[via]), self.ic.lanes[target]]


class DiverseRobber(RobberStrategy):
    """Radius-1 escape inside a (Δ, χ)-diverse coloured subgraph.

    With ``χ >= 2`` colours the robber moves to a vertex that will have at
    least ``2^t (χ-1) + 1`` differently coloured neighbours in the subgraph
    after the announced flips; with a single colour it needs ``2^t``
    neighbours.  Raises :class:`StrategyFault` if no such vertex is in reach,
    which means the diversity precondition failed.
    """

    name = "diverse"

    def __init__(self, g: Graph, members: Sequence[int], coloring: Mapping[int, int] | Sequence[int],
                 t: int):
        self.graph = g
        self.members = list(members)
        if not isinstance(coloring, Mapping):
            coloring = dict(zip(self.members, coloring))
        self.color = {v: coloring[v] for v in self.members}
        self.chi = len(set(self.color.values()))
        self.t = t
        self.member_mask = mask_of(self.members)
        classes: dict[int, list[int]] = {}
        for v, c in self.color.items():
            classes.setdefault(c, []).append(v)
        self._other = {c: self.member_mask & ~mask_of(vs) for c, vs in classes.items()}

    @property
    def threshold(self) -> int:
        if self.chi <= 1:
            return 2 ** self.t
        return 2 ** self.t * (self.chi - 1) + 1

    def score(self, v: int, flips: FlipCollection) -> int:
        target = self.member_mask if self.chi <= 1 else self._other[self.color[v]]
        return (flipped_row(self.graph, flips, v) & target).bit_count()

    def start(self, graph, config):
        return max(self.members, key=lambda v: (self.score(v, EMPTY), -v))

    def move(self, state: GameState, announced: FlipCollection):
        v = state.robber
        if v not in self.color:
            raise StrategyFault("robber", f"robber left the diverse subgraph (at {v})")
        nbrs = members_of(flipped_row(self.graph, state.active, v) & self.member_mask)
        best, best_score = v, self.score(v, announced)
        for w in nbrs:
            s = self.score(w, announced)
            if s > best_score or (s == best_score and w < best):
                best, best_score = w, s
        if best_score < self.threshold:
            raise StrategyFault(
                "robber",
                f"no vertex with >= {self.threshold} qualifying neighbours in reach "
                f"(best {best_score}); the subgraph is not diverse enough")
        return [v] if best == v else [v, best]


class GreedyRobber(RobberStrategy):
    """Move, within the radius, to the vertex of largest post-announcement degree."""

    name = "greedy"

    def start(self, graph, config):
        return max(range(graph.n), key=lambda v: (graph.degree(v), -v))

    def move(self, state: GameState, announced: FlipCollection):
        g, r = state.graph, state.config.r
        parent = {state.robber: None}
        frontier = [state.robber]
        depth = 0
        while frontier and (r is None or depth < r):
            nxt = []
            for u in frontier:
                for w in members_of(flipped_row(g, state.active, u)):
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
            depth += 1
        best = max(parent, key=lambda w: (flipped_row(g, announced, w).bit_count(), -w))
        path = [best]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]


class StaticRobber(RobberStrategy):
    """Never moves."""

    name = "static"

    def __init__(self, vertex: int = 0):
        self.vertex = vertex

    def start(self, graph, config):
        return self.vertex

    def move(self, state, announced):
        return [state.robber]


def interchange_robber(ic: Interchange) -> InterchangeRobber:
    return InterchangeRobber(ic)


def diverse_robber(g: Graph, members, coloring, t: int) -> DiverseRobber:
    return DiverseRobber(g, members, coloring, t)
