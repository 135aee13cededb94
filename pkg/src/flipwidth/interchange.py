"""Interchanges: lanes in a linear order joined pairwise by ramp vertices.

A ramp for the lane pair ``(i, j)``, ``i < j``, must see both of its lanes
and must not see any lane outside ``[i, j]``; edges to lanes strictly
inside the range, lane-lane edges and ramp-ramp edges are optional.  In
*weak* mode only pairs with ``j - i <= n - 3`` need a ramp, in *strong* mode
every pair does.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import ContractError, DomainError, GraphFormatError
from .graphcore import (
    FlipCollection,
    Graph,
    graph_from_dict,
    graph_to_dict,
    mask_from_bool,
    mask_of,
    members_of,
)

MODES = ("weak", "strong")
POLICIES = ("none", "all", "random")


def required_pairs(n: int, mode: str) -> list[tuple[int, int]]:
    """Lane pairs that must carry a ramp in an order-*n* interchange."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    span = n - 1 if mode == "strong" else n - 3
    return [(i, j) for i in range(n) for j in range(i + 1, min(n, i + span + 1))]


def escape_order(t: int) -> int:
    """Interchange order that lets a radius-2 robber beat ``t`` flips per move."""
    return 2 ** (t + 3) + 3


def triple_to_many_bound(n: int, f: int) -> float:
    """Guaranteed number of *other* lanes one lane of an equivalent triple reaches."""
    return (n - 2 ** (f + 1) - 3) / 3


@dataclass(frozen=True, eq=False)
class Interchange:
    graph: Graph
    lanes: tuple[int, ...]
    ramps: Mapping[tuple[int, int], int]
    mode: str = "weak"

    def __post_init__(self):
        object.__setattr__(self, "lanes", tuple(int(v) for v in self.lanes))
        object.__setattr__(
            self, "ramps",
            {(int(i), int(j)): int(v) for (i, j), v in sorted(self.ramps.items())},
        )
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")

    @property
    def order(self) -> int:
        return len(self.lanes)

    def ramp(self, i: int, j: int) -> int:
        return self.ramps[(min(i, j), max(i, j))]

    @property
    def designated(self) -> list[int]:
        return list(self.lanes) + list(self.ramps.values())

    @cached_property
    def ramp_pairs(self) -> list[tuple[int, int]]:
        return list(self.ramps)

    @cached_property
    def ramp_ids(self) -> np.ndarray:
        return np.array(list(self.ramps.values()), dtype=np.int64)

    @cached_property
    def lane_ids(self) -> np.ndarray:
        return np.array(self.lanes, dtype=np.int64)

    @cached_property
    def lane_index(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.lanes)}

    @cached_property
    def lane_mask(self) -> int:
        return mask_of(self.lanes)

    @cached_property
    def base_lane_ramp(self) -> np.ndarray:
        """Boolean ``(order, #ramps)`` adjacency between lanes and ramps."""
        mat = np.zeros((self.order, len(self.ramps)), dtype=bool)
        lane_index = self.lane_index
        for r, v in enumerate(self.ramps.values()):
            for w in members_of(self.graph.rows[v] & self.lane_mask):
                mat[lane_index[w], r] = True
        return mat

    def __eq__(self, other):
        if not isinstance(other, Interchange):
            return NotImplemented
        return (self.graph == other.graph and self.lanes == other.lanes
                and dict(self.ramps) == dict(other.ramps) and self.mode == other.mode)

    __hash__ = None


# -- construction --------------------------------------------------------

def build_abstract(n: int, mode: str = "weak", optional: str = "none",
                   seed: int | None = None, p: float = 0.5) -> Interchange:
    """Abstract interchange on ``n`` lanes plus one vertex per required ramp.

    Lanes are vertices ``0..n-1``; ramps follow in lexicographic pair order.
    ``optional="all"`` adds every interior lane-ramp edge (a dense
    interchange); ``"random"`` adds each optional edge of any kind with
    probability *p* using ``seed``.
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    if optional not in POLICIES:
        raise DomainError(f"optional must be one of {POLICIES}, got {optional!r}")
    minimum = 4 if mode == "weak" else 2
    if n < minimum:
        raise DomainError(f"{mode} interchange needs n >= {minimum}, got {n}")
    pairs = required_pairs(n, mode)
    R = len(pairs)
    rng = np.random.default_rng(seed) if optional == "random" else None

    lo = np.array([i for i, _ in pairs], dtype=np.int64)
    hi = np.array([j for _, j in pairs], dtype=np.int64)
    lane = np.arange(n)[:, None]
    inside = (lane > lo[None, :]) & (lane < hi[None, :])
    incidence = (lane == lo[None, :]) | (lane == hi[None, :])
    if optional == "all":
        incidence |= inside
    elif optional == "random":
        incidence |= inside & (rng.random(inside.shape) < p)

    rows = [0] * (n + R)
    for k in range(n):
        rows[k] = mask_from_bool(incidence[k]) << n
    for r in range(R):
        rows[n + r] = mask_from_bool(incidence[:, r])
    if optional == "random":
        ll = np.triu(rng.random((n, n)) < p, 1)
        for u, v in zip(*np.nonzero(ll)):
            rows[u] |= 1 << int(v)
            rows[v] |= 1 << int(u)
        rr = np.triu(rng.random((R, R)) < p, 1)
        for a, b in zip(*np.nonzero(rr)):
            u, v = n + int(a), n + int(b)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    roles = ["lane"] * n + ["ramp"] * R
    g = Graph(n + R, tuple(rows), tuple(roles))
    ramps = {pair: n + r for r, pair in enumerate(pairs)}
    return Interchange(g, tuple(range(n)), ramps, mode)


# -- validation ----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def validate(g: Graph, lanes: Sequence[int], ramps: Mapping[tuple[int, int], int],
             mode: str = "weak") -> list[Violation]:
    """All violations of the interchange axioms; an empty list means valid.

    Edges among non-designated vertices, lane-lane and ramp-ramp edges are
    optional and never reported.
    """
    out: list[Violation] = []
    lanes = list(lanes)
    n = len(lanes)
    designated = lanes + list(ramps.values())
    for v in designated:
        if not 0 <= v < g.n:
            out.append(Violation("vertex out of range", f"vertex {v} not in 0..{g.n - 1}"))
    if out:
        return out
    seen: set[int] = set()
    for v in designated:
        if v in seen:
            out.append(Violation("duplicate designated vertex", f"vertex {v}"))
        seen.add(v)
    for (i, j) in ramps:
        if not 0 <= i < j < n:
            out.append(Violation("bad ramp pair", f"({i},{j}) for order {n}"))
    for pair in required_pairs(n, mode) if n >= 2 else []:
        if pair not in ramps:
            out.append(Violation("missing ramp", f"({pair[0]},{pair[1]})"))
    lane_index = {v: k for k, v in enumerate(lanes)}
    lane_mask = mask_of(lanes)
    for (i, j), z in ramps.items():
        if not 0 <= i < j < n:
            continue
        row = g.rows[z]
        for k in (i, j):
            if not row >> lanes[k] & 1:
                out.append(Violation("missing mandatory edge", f"ramp ({i},{j}) - lane {k}"))
        for w in members_of(row & lane_mask):
            k = lane_index[w]
            if k < i or k > j:
                out.append(Violation("forbidden ramp–lane edge", f"ramp ({i},{j}) - lane {k}"))
    return out


def validate_interchange(ic: Interchange) -> list[Violation]:
    return validate(ic.graph, ic.lanes, ic.ramps, ic.mode)


def is_valid(ic: Interchange) -> bool:
    return not validate_interchange(ic)


def optional_incidence_kind(ic: Interchange) -> str:
    """``"dense"``, ``"sparse"`` or ``"mixed"`` by the interior lane-ramp edges."""
    L = ic.base_lane_ramp
    present = absent = False
    for r, (i, j) in enumerate(ic.ramp_pairs):
        interior = L[i + 1:j, r]
        present |= bool(interior.any())
        absent |= bool((~interior).any())
    if present and absent:
        return "mixed"
    return "dense" if present or not absent else "sparse"


# -- flips acting on an interchange --------------------------------------

def lane_equivalence_classes(ic: Interchange, flips: FlipCollection) -> list[list[int]]:
    """Lane indices grouped by their membership signature across *flips*."""
    groups: dict[int, list[int]] = {}
    for k, v in enumerate(ic.lanes):
        groups.setdefault(flips.signature(v), []).append(k)
    return sorted(groups.values(), key=lambda c: c[0])


def flipped_lane_ramp(ic: Interchange, flips: FlipCollection) -> np.ndarray:
    """Lane-ramp adjacency after *flips*, as a boolean ``(order, #ramps)`` array."""
    L = ic.base_lane_ramp
    if not len(flips):
        return L
    flips.check_domain(ic.graph.n)
    memb = flips.membership(ic.graph.n)
    s_lane = memb[:, ic.lane_ids].astype(np.int32)
    s_ramp = memb[:, ic.ramp_ids].astype(np.int32)
    parity = (s_lane.T @ s_ramp) & 1
    return L ^ parity.astype(bool)


def lane_reach_matrix(ic: Interchange, flips: FlipCollection,
                      lane_ramp: np.ndarray | None = None) -> np.ndarray:
    """``[a, b]`` true iff ``a == b`` or a lane-ramp-lane path joins them after *flips*."""
    M = flipped_lane_ramp(ic, flips) if lane_ramp is None else lane_ramp
    Mf = M.astype(np.float32)
    reach = (Mf @ Mf.T) > 0.5
    np.fill_diagonal(reach, True)
    return reach


def reach_counts(ic: Interchange, flips: FlipCollection) -> np.ndarray:
    """Per lane: lanes reachable by paths of length <= 2 through ramps, self included."""
    return lane_reach_matrix(ic, flips).sum(axis=1)


def reach_count_after(ic: Interchange, flips: FlipCollection, lane: int) -> int:
    if not 0 <= lane < ic.order:
        raise DomainError(f"lane {lane} outside 0..{ic.order - 1}")
    return int(reach_counts(ic, flips)[lane])


def triple_connection(ic: Interchange, flips: FlipCollection,
                      first: Sequence[int], second: Sequence[int]) -> int | None:
    """A ramp vertex adjacent, after *flips*, to a lane of each triple (or None).

    Both triples are lane indices; they must be disjoint and each must lie in
    one equivalence class under *flips*.
    """
    first, second = list(first), list(second)
    if len(first) != 3 or len(second) != 3:
        raise ContractError("triples must have three lanes each")
    if len(set(first) | set(second)) != 6:
        raise ContractError("triples must consist of six distinct lanes")
    for k in first + second:
        if not 0 <= k < ic.order:
            raise ContractError(f"lane {k} outside 0..{ic.order - 1}")
    for triple in (first, second):
        if len({flips.signature(ic.lanes[k]) for k in triple}) != 1:
            raise ContractError(f"lanes {triple} are not equivalent under the flips")
    M = flipped_lane_ramp(ic, flips)
    hits = M[first].any(axis=0) & M[second].any(axis=0)
    idx = np.flatnonzero(hits)
    if idx.size == 0:
        return None
    return int(ic.ramp_ids[idx[0]])


# -- conversions ---------------------------------------------------------

def sub_interchange(ic: Interchange, lane_indices: Sequence[int], mode: str) -> Interchange:
    """Induced interchange on the chosen lanes and the ramps between them."""
    lane_indices = sorted(lane_indices)
    pairs = [(a, b) for a, b in itertools.combinations(range(len(lane_indices)), 2)
             if (lane_indices[a], lane_indices[b]) in ic.ramps]
    keep = [ic.lanes[k] for k in lane_indices]
    keep += [ic.ramps[(lane_indices[a], lane_indices[b])] for a, b in pairs]
    g = ic.graph.induced_subgraph(keep)
    m = len(lane_indices)
    ramps = {pair: m + r for r, pair in enumerate(pairs)}
    return Interchange(g, tuple(range(m)), ramps, mode)


def weak_to_strong(ic: Interchange) -> Interchange:
    """Drop the two outermost lanes; every remaining pair then has a ramp."""
    if ic.mode != "weak":
        raise DomainError("weak_to_strong expects a weak interchange")
    if ic.order < 4:
        raise DomainError(f"weak_to_strong needs order >= 4, got {ic.order}")
    return sub_interchange(ic, range(1, ic.order - 1), "strong")


def triple_color(ic: Interchange, a: int, m: int, b: int) -> int:
    """1 iff the ramp of the outer lanes ``a < b`` sees the middle lane ``m``."""
    return int(ic.graph.has_edge(ic.ramps[(a, b)], ic.lanes[m]))


def ramsey_extract(ic: Interchange) -> tuple[Interchange, str]:
    """Sub-interchange whose optional lane-ramp incidences are all equal.

    Greedy pigeonholing on the 2-colouring of lane triples: lanes are
    taken in order and the candidate pool is cut down to the majority
    colour class of every triple the new lane opens.  This yields a
    sequence in which a triple's colour depends only on its first two
    lanes; a second pass makes it depend only on the first lane and keeps
    the majority colour.  Returns the sub-interchange and its kind.
    """
    if ic.mode != "strong":
        raise ContractError("ramsey_extract expects a strong interchange")
    n = ic.order
    if n < 3:
        return ic, optional_incidence_kind(ic)

    # pass 1: pair colours f(p, q) with colour(S_p, S_q, w) == f(p, q) for every later w
    pool = list(range(n))
    seq: list[int] = []
    pair_color: dict[tuple[int, int], int | None] = {}
    while pool:
        v = pool.pop(0)
        q = len(seq)
        for p, u in enumerate(seq):
            if not pool:
                pair_color[(p, q)] = None  # no later lane, so the colour is free
                continue
            ones = [w for w in pool if triple_color(ic, u, v, w)]
            zeros = [w for w in pool if not triple_color(ic, u, v, w)]
            if len(ones) >= len(zeros):
                pool, pair_color[(p, q)] = ones, 1
            else:
                pool, pair_color[(p, q)] = zeros, 0
        seq.append(v)

    # pass 2: lane colours g(p) with f(p, q) == g(p) for every later q
    pool = list(range(len(seq)))
    chosen: list[int] = []
    lane_color: dict[int, int | None] = {}
    while pool:
        p = pool.pop(0)
        if all(pair_color[(p, q)] is None for q in pool):
            lane_color[p] = None  # opens no triple inside the sequence
        else:
            ones = [q for q in pool if pair_color[(p, q)] in (1, None)]
            zeros = [q for q in pool if pair_color[(p, q)] in (0, None)]
            if len(ones) >= len(zeros):
                pool, lane_color[p] = ones, 1
            else:
                pool, lane_color[p] = zeros, 0
        chosen.append(p)

    n_ones = sum(1 for p in chosen if lane_color[p] == 1)
    n_zeros = sum(1 for p in chosen if lane_color[p] == 0)
    color = 1 if n_ones >= n_zeros else 0
    keep = [p for p in chosen if lane_color[p] in (color, None)]
    lanes = sorted(seq[p] for p in keep)
    if len(lanes) < 3:
        # any three lanes span a single triple and are trivially monochromatic
        lanes = seq[:3] if len(seq) >= 3 else list(range(3))
        lanes = sorted(lanes)
        color = triple_color(ic, lanes[0], lanes[1], lanes[2])
    sub = sub_interchange(ic, lanes, "strong")
    return sub, "dense" if color else "sparse"


def is_monochromatic(ic: Interchange) -> bool:
    """True iff all lane triples of the interchange have the same colour."""
    colors = {triple_color(ic, a, m, b)
              for a, m, b in itertools.combinations(range(ic.order), 3)}
    return len(colors) <= 1


# -- serialization -------------------------------------------------------

def interchange_to_dict(ic: Interchange) -> dict:
    d = graph_to_dict(ic.graph)
    d["lanes"] = list(ic.lanes)
    d["ramps"] = {f"{i},{j}": v for (i, j), v in ic.ramps.items()}
    d["mode"] = ic.mode
    return d


def interchange_from_dict(d, where: str = "$") -> Interchange:
    g = graph_from_dict(d, where)
    lanes = d.get("lanes")
    if not isinstance(lanes, list) or not all(isinstance(v, int) for v in lanes):
        raise GraphFormatError("'lanes' must be a list of vertex ids", f"{where}.lanes")
    raw = d.get("ramps")
    if not isinstance(raw, dict):
        raise GraphFormatError("'ramps' must be an object keyed by 'i,j'", f"{where}.ramps")
    ramps = {}
    for key, v in raw.items():
        loc = f"{where}.ramps[{key!r}]"
        try:
            i, j = (int(x) for x in key.split(","))
        except ValueError:
            raise GraphFormatError("ramp key must look like 'i,j'", loc) from None
        if not isinstance(v, int):
            raise GraphFormatError("ramp value must be a vertex id", loc)
        ramps[(i, j)] = v
    mode = d.get("mode", "weak")
    if mode not in MODES:
        raise GraphFormatError(f"mode must be one of {MODES}", f"{where}.mode")
    return Interchange(g, tuple(lanes), ramps, mode)
