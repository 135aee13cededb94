"""Baseline cop strategies used as adversaries in simulations."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from ..graphcore import (
    FlipCollection,
    Graph,
    blockade_flips,
    flipped_row,
    mask_from_bool,
    mask_of,
    members_of,
)
from .engine import CopStrategy, GameConfig, GameState


class RandomCop(CopStrategy):
    """Each round, ``t`` independent uniformly random vertex subsets."""

    name = "random"

    def __init__(self, seed: int = 0, t: int | None = None, p: float = 0.5):
        self.seed = seed
        self.t = t
        self.p = p
        self._rng = None

    def reset(self, graph: Graph, config: GameConfig) -> None:
        self._rng = np.random.default_rng(self.seed)

    def announce(self, state: GameState) -> FlipCollection:
        t = state.config.t if self.t is None else min(self.t, state.config.t)
        n = state.graph.n
        bits = self._rng.random((t, n)) < self.p
        return FlipCollection.from_masks(mask_from_bool(row) for row in bits)


class DyadicCop(CopStrategy):
    """Flip ``b`` takes alternate blocks of ``ceil(n / 2^(b+1))`` consecutive lanes.

    The block boundaries rotate by one lane per round.  Vertices listed in
    *anchors* (e.g. ramps keyed to their first lane) join a flip whenever
    their anchor lane does.
    """

    name = "dyadic"

    def __init__(self, lanes: Sequence[int] | None = None,
                 anchors: Mapping[int, int] | None = None):
        self.lanes = None if lanes is None else list(lanes)
        self.anchors = dict(anchors or {})

    def reset(self, graph, config):
        if self.lanes is None:
            self.lanes = list(range(graph.n))
        by_anchor: dict[int, list[int]] = {}
        for v, k in self.anchors.items():
            by_anchor.setdefault(k, []).append(v)
        self._anchor_mask = {k: mask_of(vs) for k, vs in by_anchor.items()}

    def announce(self, state: GameState) -> FlipCollection:
        n = len(self.lanes)
        shift = state.round - 1
        masks = []
        for b in range(state.config.t):
            size = max(1, math.ceil(n / 2 ** (b + 1)))
            m = 0
            for k, v in enumerate(self.lanes):
                if ((k + shift) // size) % 2 == 1:
                    m |= 1 << v
                    m |= self._anchor_mask.get(k, 0)
            masks.append(m)
        return FlipCollection.from_masks(masks)


class BlockadeCop(CopStrategy):
    """Blockade the robber's highest-degree neighbours, two flips apiece.

    With an odd budget the spare flip complements the robber's closed
    neighbourhood in the base graph.
    """

    name = "blockade"

    def announce(self, state: GameState) -> FlipCollection:
        g, v, t = state.graph, state.robber, state.config.t
        nbrs = members_of(flipped_row(g, state.active, v))
        ranked = sorted(nbrs, key=lambda w: (-flipped_row(g, state.active, w).bit_count(), w))
        masks: list[int] = []
        for w in ranked[: t // 2]:
            masks.extend(blockade_flips(g, w).masks)
        if len(masks) < t:
            masks.append(g.rows[v] | 1 << v)
        return FlipCollection.from_masks(masks[:t])


def random_cop(seed: int, t: int | None = None) -> RandomCop:
    return RandomCop(seed, t)


def dyadic_cop(lanes: Sequence[int] | None = None,
               anchors: Mapping[int, int] | None = None) -> DyadicCop:
    return DyadicCop(lanes, anchors)


def blockade_cop() -> BlockadeCop:
    return BlockadeCop()


def interchange_anchors(ic) -> dict[int, int]:
    """Anchor each ramp of an interchange to its first lane (for :class:`DyadicCop`)."""
    return {v: i for (i, _), v in ic.ramps.items()}
