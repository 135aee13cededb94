"""Neighbourhood diversity of (coloured) induced subgraphs and the tilted-grid ramp set."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, GraphFormatError
from .graphcore import Graph, graph_from_dict, graph_to_dict, mask_of
from .interchange import Interchange

# returned by chi_diversity when no two members share a colour
UNCONSTRAINED = math.inf


@dataclass(frozen=True, eq=False)
class ColoredSubgraph:
    base: Graph
    members: tuple[int, ...]
    coloring: tuple[int, ...]  # aligned with members, values in 1..chi

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(v) for v in self.members))
        col = self.coloring
        if isinstance(col, Mapping):
            col = [col[v] for v in self.members]
        object.__setattr__(self, "coloring", tuple(int(c) for c in col))
        if not self.members:
            raise DomainError("a coloured subgraph needs at least one member")
        if len(set(self.members)) != len(self.members):
            raise DomainError("members must be distinct")
        if len(self.coloring) != len(self.members):
            raise DomainError("coloring must give one colour per member")
        for v in self.members:
            if not 0 <= v < self.base.n:
                raise DomainError(f"member {v} outside the base graph")
        if min(self.coloring) < 1:
            raise DomainError("colours are numbered from 1")

    @property
    def chi(self) -> int:
        return len(set(self.coloring))

    def color_of(self) -> dict[int, int]:
        return dict(zip(self.members, self.coloring))


def _min_symmetric_difference(nbhd: dict[int, int], groups: list[list[int]]) -> float:
    best = UNCONSTRAINED
    for group in groups:
        for a in range(len(group)):
            na = nbhd[group[a]]
            for b in range(a + 1, len(group)):
                diff = (na ^ nbhd[group[b]]).bit_count()
                if diff < best:
                    best = diff
    return best


def diversity(g: Graph, S: Sequence[int]) -> int:
    """Least ``|N(u) xor N(v)|`` over pairs of ``S``, neighbourhoods taken inside ``G[S]``."""
    S = list(dict.fromkeys(S))
    if len(S) < 2:
        raise DomainError("diversity needs at least two vertices")
    m = mask_of(S)
    nbhd = {v: g.rows[v] & m for v in S}
    return int(_min_symmetric_difference(nbhd, [S]))


def chi_diversity(cs: ColoredSubgraph) -> float:
    """Diversity over same-coloured pairs after dropping improperly coloured edges.

    A single colour means no filtering (all edges kept).  Returns
    :data:`UNCONSTRAINED` when every colour class is a singleton.
    """
    color = cs.color_of()
    classes: dict[int, list[int]] = {}
    for v, c in color.items():
        classes.setdefault(c, []).append(v)
    full = mask_of(cs.members)
    if len(classes) == 1:
        nbhd = {v: cs.base.rows[v] & full for v in cs.members}
    else:
        other = {c: full & ~mask_of(vs) for c, vs in classes.items()}
        nbhd = {v: cs.base.rows[v] & other[color[v]] for v in cs.members}
    return _min_symmetric_difference(nbhd, list(classes.values()))


def tilted_grid_ramps(n: int, k: int) -> list[tuple[int, int]]:
    """Pairs ``x < y < n`` with ``y - x >= k`` and ``x = k*y (mod k^2 + 1)``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    mod = k * k + 1
    return [(x, y) for y in range(n) for x in range(0, y - k + 1) if (x - k * y) % mod == 0]


def cube_root_k(n: int) -> int:
    """``floor(n^(1/3))`` computed exactly."""
    k = round(n ** (1 / 3))
    while k ** 3 > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


def tilted_grid_sorted(n: int, k: int) -> list[tuple[int, int]]:
    return sorted(tilted_grid_ramps(n, k))


def diverse_interchange_subgraph(ic: Interchange, k: int) -> ColoredSubgraph:
    """All lanes (colour 1) plus the ramps of the tilted grid (colour 2)."""
    pairs = [p for p in tilted_grid_sorted(ic.order, k) if p in ic.ramps]
    members = list(ic.lanes) + [ic.ramps[p] for p in pairs]
    coloring = [1] * ic.order + [2] * len(pairs)
    return ColoredSubgraph(ic.graph, members, coloring)


def colored_subgraph_to_dict(cs: ColoredSubgraph) -> dict:
    d = graph_to_dict(cs.base)
    d["members"] = list(cs.members)
    d["coloring"] = list(cs.coloring)
    return d


def colored_subgraph_from_dict(d, where: str = "$") -> ColoredSubgraph:
    g = graph_from_dict(d, where)
    try:
        return ColoredSubgraph(g, d["members"], d["coloring"])
    except KeyError as exc:
        raise GraphFormatError(f"missing key {exc}", where) from None
    except (DomainError, TypeError, ValueError) as exc:
        raise GraphFormatError(str(exc), where) from None
