"""Graphs as packed adjacency rows, flip collections and flipped-graph queries.

Vertices are the dense integers ``0..n-1``.  Row ``u`` of a graph is a Python
int whose bit ``v`` is set iff ``uv`` is an edge, so a flip is XOR with a
vertex mask and neighbourhood algebra is plain bit arithmetic.  Flipped
adjacency is answered lazily from the base rows and the flip parities;
:func:`apply_flips` materializes it when a whole graph is needed.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, GraphFormatError

ROLES = ("lane", "ramp", "blocker", "plain")

# Above this many set bits, decoding a mask through numpy beats bit peeling.
_NUMPY_DECODE_THRESHOLD = 64


def mask_of(vertices: Iterable[int]) -> int:
    """Bit mask with bit ``v`` set for every ``v`` in *vertices*."""
    vs = np.fromiter(vertices, dtype=np.int64)
    if vs.size == 0:
        return 0
    if vs.min() < 0:
        raise DomainError(f"negative vertex id {int(vs.min())}")
    if vs.size < _NUMPY_DECODE_THRESHOLD:
        m = 0
        for v in vs.tolist():
            m |= 1 << v
        return m
    bits = np.zeros(int(vs.max()) + 1, dtype=bool)
    bits[vs] = True
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def mask_from_bool(bits: np.ndarray) -> int:
    """Mask of the indices where the boolean array *bits* is true."""
    if bits.size == 0:
        return 0
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def members_of(mask: int) -> list[int]:
    """Sorted vertex ids of the set bits of *mask*."""
    if mask < 0:
        raise DomainError("negative mask")
    if mask.bit_count() < _NUMPY_DECODE_THRESHOLD:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    return np.flatnonzero(bool_of(mask, mask.bit_length())).tolist()


def bool_of(mask: int, n: int) -> np.ndarray:
    """Boolean array of length *n* with the bits of *mask*."""
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=n).astype(bool)


@dataclass(frozen=True, eq=False)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    Use :meth:`from_edges` or :meth:`from_rows` rather than the raw
    constructor; the raw constructor trusts its rows.
    """

    n: int
    rows: tuple[int, ...]
    roles: tuple[str, ...] | None = None
    colors: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise DomainError(f"expected {self.n} rows, got {len(self.rows)}")
        if self.roles is not None:
            if len(self.roles) != self.n:
                raise DomainError("roles must cover every vertex exactly once")
            bad = set(self.roles) - set(ROLES)
            if bad:
                raise DomainError(f"unknown roles {sorted(bad)}")
        if self.colors is not None and len(self.colors) != self.n:
            raise DomainError("colors must cover every vertex exactly once")

    @classmethod
    def from_edges(cls, n, edges, roles=None, colors=None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise DomainError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), _opt_tuple(roles), _opt_tuple(colors))

    @classmethod
    def from_rows(cls, rows, roles=None, colors=None, check=True) -> "Graph":
        g = cls(len(rows), tuple(int(r) for r in rows), _opt_tuple(roles), _opt_tuple(colors))
        if check:
            g.check()
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def check(self) -> None:
        """Raise :class:`DomainError` unless rows are symmetric and loop-free."""
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise DomainError(f"row {u} references vertices >= n")
            if row >> u & 1:
                raise DomainError(f"self-loop at {u}")
            for v in members_of(row >> (u + 1)):
                if not self.rows[u + 1 + v] >> u & 1:
                    raise DomainError(f"asymmetric adjacency {u}-{u + 1 + v}")

    # -- queries ---------------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return members_of(self.rows[u])

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for w in members_of(row >> (u + 1)):
                yield u, u + 1 + w

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices_with_role(self, role: str) -> list[int]:
        if self.roles is None:
            return []
        return [v for v, r in enumerate(self.roles) if r == role]

    def with_labels(self, roles=None, colors=None) -> "Graph":
        return Graph(self.n, self.rows, _opt_tuple(roles), _opt_tuple(colors))

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced by *vertices*; new vertex ``k`` is ``vertices[k]``."""
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise DomainError("induced_subgraph: repeated vertex")
        for v in vertices:
            if not 0 <= v < self.n:
                raise DomainError(f"vertex {v} outside 0..{self.n - 1}")
        index = {v: k for k, v in enumerate(vertices)}
        keep = mask_of(vertices)
        rows = []
        for v in vertices:
            row = 0
            for w in members_of(self.rows[v] & keep):
                row |= 1 << index[w]
            rows.append(row)
        roles = None if self.roles is None else [self.roles[v] for v in vertices]
        colors = None if self.colors is None else [self.colors[v] for v in vertices]
        return Graph(len(vertices), tuple(rows), _opt_tuple(roles), _opt_tuple(colors))

    def complement(self) -> "Graph":
        full = self.vertex_mask
        rows = tuple((~r & full) & ~(1 << u) for u, r in enumerate(self.rows))
        return Graph(self.n, rows, self.roles, self.colors)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.rows, self.roles, self.colors) == (
            other.n, other.rows, other.roles, other.colors)

    def __hash__(self):
        return hash((self.n, self.rows, self.roles, self.colors))

    def same_edges(self, other: "Graph") -> bool:
        """Equality of the labelled edge sets, ignoring roles and colors."""
        return self.n == other.n and self.rows == other.rows

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def _opt_tuple(x):
    return None if x is None else tuple(x)


class FlipCollection:
    """Unordered collection of flips, each stored as a vertex mask.

    Equality ignores order (the order in which flips are applied never
    matters) but keeps multiplicity.
    """

    __slots__ = ("masks", "_key")

    def __init__(self, flips: Iterable[Iterable[int]] = ()):
        self.masks: tuple[int, ...] = tuple(mask_of(f) for f in flips)
        self._key = None

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "FlipCollection":
        fc = cls()
        fc.masks = tuple(int(m) for m in masks)
        for m in fc.masks:
            if m < 0:
                raise DomainError("negative flip mask")
        return fc

    def __len__(self):
        return len(self.masks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        for m in self.masks:
            yield frozenset(members_of(m))

    def sets(self) -> list[frozenset[int]]:
        return list(self)

    @property
    def key(self) -> tuple[int, ...]:
        if self._key is None:
            self._key = tuple(sorted(self.masks))
        return self._key

    def canonical(self) -> "FlipCollection":
        return FlipCollection.from_masks(self.key)

    def __eq__(self, other):
        if not isinstance(other, FlipCollection):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FlipCollection({[sorted(s) for s in self.sets()]})"

    def support(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    def check_domain(self, n: int) -> None:
        for k, m in enumerate(self.masks):
            if m >> n:
                bad = members_of(m >> n)[0] + n
                raise DomainError(f"flip {k} references vertex {bad} >= n={n}")

    def toggle(self, v: int) -> int:
        """XOR of the flips containing *v*: the adjacency changes seen by *v*."""
        out = 0
        for m in self.masks:
            if m >> v & 1:
                out ^= m
        return out

    def signature(self, v: int) -> int:
        """Membership bits of *v* over the canonically sorted flips."""
        sig = 0
        for k, m in enumerate(self.key):
            if m >> v & 1:
                sig |= 1 << k
        return sig

    def membership(self, n: int) -> np.ndarray:
        """Boolean ``(len, n)`` array, row ``k`` = members of canonical flip ``k``."""
        if not self.masks:
            return np.zeros((0, n), dtype=bool)
        return np.stack([bool_of(m, n) for m in self.key])


EMPTY = FlipCollection()


def flipped_row(g: Graph, flips: FlipCollection, u: int) -> int:
    """Neighbourhood mask of *u* in ``g`` flipped by *flips* (lazy)."""
    return (g.rows[u] ^ flips.toggle(u)) & ~(1 << u)


def flipped_adjacent(g: Graph, flips: FlipCollection, u: int, v: int) -> bool:
    if u == v:
        return False
    parity = 0
    for m in flips.masks:
        parity ^= (m >> u) & (m >> v) & 1
    return bool((g.rows[u] >> v & 1) ^ parity)


def apply_flips(g: Graph, flips: FlipCollection) -> Graph:
    """Materialize ``g`` with every flip complemented; roles/colors kept."""
    flips.check_domain(g.n)
    if not flips.masks:
        return g
    memb = flips.membership(g.n)
    weights = 1 << np.arange(len(flips), dtype=np.int64)
    sigs = (weights @ memb.astype(np.int64)).tolist()
    key = flips.key
    combo = {}
    rows = []
    for u, row in enumerate(g.rows):
        s = sigs[u]
        if s not in combo:
            t = 0
            for k, m in enumerate(key):
                if s >> k & 1:
                    t ^= m
            combo[s] = t
        rows.append((row ^ combo[s]) & ~(1 << u))
    return Graph(g.n, tuple(rows), g.roles, g.colors)


def blockade_flips(g: Graph, v: int) -> FlipCollection:
    """Two flips isolating *v*: its closed neighbourhood, then its open one."""
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} outside 0..{g.n - 1}")
    row = g.rows[v]
    return FlipCollection.from_masks((row | 1 << v, row))


def reachable_mask(g: Graph, flips: FlipCollection, v: int, r=None) -> int:
    """Mask of vertices within flipped distance *r* of *v* (``None``/inf = unbounded)."""
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} outside 0..{g.n - 1}")
    if r is not None and math.isinf(r):
        r = None
    seen = 1 << v
    frontier = [v]
    depth = 0
    while frontier and (r is None or depth < r):
        nxt = 0
        for u in frontier:
            nxt |= flipped_row(g, flips, u)
        nxt &= ~seen
        seen |= nxt
        frontier = members_of(nxt)
        depth += 1
    return seen


def reachable(g: Graph, flips: FlipCollection, v: int, r=None) -> frozenset[int]:
    return frozenset(members_of(reachable_mask(g, flips, v, r)))


def is_isolated(g: Graph, flips: FlipCollection, v: int) -> bool:
    return flipped_row(g, flips, v) == 0


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def has_biclique(g: Graph, t: int) -> bool:
    """True iff ``g`` contains ``K_{t,t}`` as a (not necessarily induced) subgraph."""
    if t < 1:
        raise DomainError("t must be >= 1")

    def extend(chosen_common: int, start: int, size: int) -> bool:
        if size == t:
            return chosen_common.bit_count() >= t
        for u in range(start, g.n):
            common = chosen_common & g.rows[u]
            if common.bit_count() >= t and extend(common, u + 1, size + 1):
                return True
        return False

    return extend(g.vertex_mask, 0, 0)


# -- isomorphism ---------------------------------------------------------

def _refine(g: Graph, colors: list[int]) -> list[int]:
    """One-dimensional Weisfeiler-Leman refinement to a stable partition."""
    while True:
        sigs = [
            (colors[u], tuple(sorted(Counter(colors[w] for w in g.neighbors(u)).items())))
            for u in range(g.n)
        ]
        palette = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def is_isomorphic_small(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test by refinement plus backtracking.

    Intended for small graphs (a dozen vertices); it also handles structured
    graphs such as hypercubes of a few dozen vertices quickly.
    """
    return find_isomorphism(g1, g2) is not None


def find_isomorphism(g1: Graph, g2: Graph) -> dict[int, int] | None:
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    n = g1.n
    if n == 0:
        return {}
    # refine the disjoint union so colours are comparable across graphs
    union = Graph.from_edges(
        2 * n,
        list(g1.edges()) + [(u + n, v + n) for u, v in g2.edges()],
    )
    colors = _refine(union, [0] * (2 * n))
    c1, c2 = colors[:n], colors[n:]
    if sorted(c1) != sorted(c2):
        return None
    # order g1 vertices: rarest colour class first, then by BFS adjacency
    freq = Counter(c1)
    order = []
    placed = set()
    for root in sorted(range(n), key=lambda v: (freq[c1[v]], v)):
        if root in placed:
            continue
        queue = deque([root])
        placed.add(root)
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g1.neighbors(u), key=lambda w: (freq[c1[w]], w)):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)

    mapping: dict[int, int] = {}
    used = 0

    def search(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        u = order[i]
        mapped_nbrs = [(mapping[w], g1.has_edge(u, w)) for w in order[:i]]
        for cand in by_color[c1[u]]:
            if used >> cand & 1:
                continue
            if all(g2.has_edge(cand, x) == adj for x, adj in mapped_nbrs):
                mapping[u] = cand
                used |= 1 << cand
                if search(i + 1):
                    return True
                used &= ~(1 << cand)
                del mapping[u]
        return False

    return dict(mapping) if search(0) else None


# -- serialization -------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    d = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.roles is not None:
        d["roles"] = list(g.roles)
    if g.colors is not None:
        d["colors"] = list(g.colors)
    return d


def graph_from_dict(d, where: str = "$") -> Graph:
    if not isinstance(d, dict):
        raise GraphFormatError("expected an object", where)
    n = d.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("'n' must be a non-negative integer", f"{where}.n")
    edges = d.get("edges", [])
    if not isinstance(edges, list):
        raise GraphFormatError("'edges' must be a list", f"{where}.edges")
    rows = [0] * n
    for k, e in enumerate(edges):
        loc = f"{where}.edges[{k}]"
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise GraphFormatError("edge must be a pair of integers", loc)
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u},{v}) outside 0..{n - 1}", loc)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", loc)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"duplicate edge ({min(u, v)},{max(u, v)})", loc)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    roles = d.get("roles")
    if roles is not None:
        if not isinstance(roles, list) or len(roles) != n:
            raise GraphFormatError("'roles' must list one role per vertex", f"{where}.roles")
        for k, r in enumerate(roles):
            if r not in ROLES:
                raise GraphFormatError(f"unknown role {r!r}", f"{where}.roles[{k}]")
    colors = d.get("colors")
    if colors is not None:
        if (not isinstance(colors, list) or len(colors) != n
                or not all(isinstance(c, int) for c in colors)):
            raise GraphFormatError("'colors' must list one integer per vertex", f"{where}.colors")
    return Graph(n, tuple(rows), _opt_tuple(roles), _opt_tuple(colors))


def dumps(obj: dict) -> str:
    """Deterministic JSON text used by every writer in the package."""
    return json.dumps(obj, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc


def serialize(g: Graph) -> str:
    return dumps(graph_to_dict(g))


def parse(text: str) -> Graph:
    return graph_from_dict(loads(text))


# -- small named graphs used as fixtures and oracles ---------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    us, vs = np.nonzero(upper)
    return Graph.from_edges(n, zip(us.tolist(), vs.tolist()))
