"""Executable versions of the three fixed formulas used by the transductions.

``phi(x, y)``: some marked vertex is a common neighbour of ``x`` and ``y``.
``psi(x, y)``: ``x`` is the first lane and ``y`` differs from it, or some
ramp adjacent to the first lane sees ``x`` but not ``y``.
``gamma(x, z)``: ``x`` is adjacent to ramp ``z`` and no two lane
neighbours ``u, v`` of ``z`` satisfy ``psi(u, x)`` and ``psi(x, v)``.

Each formula is evaluated by direct quantifier loops over the vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, GraphFormatError
from .graphcore import Graph
from .interchange import Interchange, build_abstract, interchange_from_dict, interchange_to_dict


@dataclass(frozen=True, eq=False)
class ColoredInterchange:
    """Interchange with unary predicates ``A`` (marked), ``R`` (ramps), ``F`` (first lane)."""

    ic: Interchange
    A: frozenset[int] = frozenset()
    _psi: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(int(v) for v in self.A))
        bad = self.A - set(self.ic.ramps.values())
        if bad:
            raise DomainError(f"marked vertices {sorted(bad)} are not ramps")

    @property
    def R(self) -> frozenset[int]:
        return frozenset(self.ic.ramps.values())

    @property
    def F(self) -> int:
        return self.ic.lanes[0]

    def is_lane(self, v: int) -> bool:
        return v not in self.R


def encode_graph(g: Graph) -> ColoredInterchange:
    """Sparse strong interchange on ``|G|`` lanes; ramp ``(u, v)`` marked iff ``uv`` is an edge."""
    if g.n < 2:
        raise DomainError("encode_graph needs at least two vertices")
    ic = build_abstract(g.n, "strong", "none")
    return ColoredInterchange(ic, frozenset(ic.ramps[(u, v)] for u, v in g.edges()))


def phi(ci: ColoredInterchange, x: int, y: int) -> bool:
    rows = ci.ic.graph.rows
    return any(rows[x] >> z & 1 and rows[y] >> z & 1 for z in ci.A)


def decode_phi(ci: ColoredInterchange, lanes: Sequence[int] | None = None) -> Graph:
    """Graph on the given lane vertices (default: all lanes, in order) defined by ``phi``."""
    lanes = list(ci.ic.lanes if lanes is None else lanes)
    edges = [(a, b) for a, b in itertools.combinations(range(len(lanes)), 2)
             if phi(ci, lanes[a], lanes[b])]
    return Graph.from_edges(len(lanes), edges)


def psi(ci: ColoredInterchange, x: int, y: int) -> bool:
    key = (x, y)
    if key not in ci._psi:
        ci._psi[key] = _psi_eval(ci, x, y)
    return ci._psi[key]


def _psi_eval(ci: ColoredInterchange, x: int, y: int) -> bool:
    if x == ci.F and x != y:
        return True
    rows = ci.ic.graph.rows
    for z in range(ci.ic.graph.n):
        if z in ci.R and rows[z] >> ci.F & 1 and rows[z] >> x & 1 and not rows[z] >> y & 1:
            return True
    return False


def psi_order(ci: ColoredInterchange, x: int, y: int) -> bool:
    """``psi`` on lane indices ``x`` and ``y``."""
    return psi(ci, ci.ic.lanes[x], ci.ic.lanes[y])


def gamma(ci: ColoredInterchange, x: int, z: int) -> bool:
    """``gamma`` on vertex ids (``x`` a lane vertex, ``z`` a ramp vertex)."""
    rows = ci.ic.graph.rows
    if not rows[z] >> x & 1:
        return False
    nbrs = [u for u in range(ci.ic.graph.n) if rows[z] >> u & 1 and ci.is_lane(u)]
    for u in nbrs:
        if not psi(ci, u, x):
            continue
        for v in nbrs:
            if psi(ci, x, v):
                return False
    return True


def gamma_incidence(ci: ColoredInterchange, x: int, z: int) -> bool:
    """``gamma`` on a lane index ``x`` and a ramp vertex ``z``."""
    return gamma(ci, ci.ic.lanes[x], z)


def dense_to_sparse(ci: ColoredInterchange) -> Graph:
    """Graph on the same vertex ids whose edges are exactly the ``gamma`` pairs."""
    g = ci.ic.graph
    rows = [0] * g.n
    for z in ci.R:
        for x in range(g.n):
            if ci.is_lane(x) and gamma(ci, x, z):
                rows[x] |= 1 << z
                rows[z] |= 1 << x
    return Graph(g.n, tuple(rows), g.roles)


def transduce(g: Graph) -> tuple[Graph, Graph]:
    """Mark a dense strong interchange by ``g``, thin it with ``gamma``, decode with ``phi``.

    Returns ``(sparse, decoded)``; ``decoded`` equals ``g`` on lane ids.
    """
    enc = encode_graph(g)
    dense = build_abstract(g.n, "strong", "all")
    ci = ColoredInterchange(dense, enc.A)
    sparse = dense_to_sparse(ci)
    thinned = ColoredInterchange(Interchange(sparse, dense.lanes, dense.ramps, "strong"), enc.A)
    return sparse, decode_phi(thinned)


def colored_interchange_to_dict(ci: ColoredInterchange) -> dict:
    d = interchange_to_dict(ci.ic)
    d["A"] = sorted(ci.A)
    return d


def colored_interchange_from_dict(d, where: str = "$") -> ColoredInterchange:
    ic = interchange_from_dict(d, where)
    marks = d.get("A", [])
    if not isinstance(marks, list) or not all(isinstance(v, int) for v in marks):
        raise GraphFormatError("'A' must be a list of vertex ids", f"{where}.A")
    try:
        return ColoredInterchange(ic, frozenset(marks))
    except DomainError as exc:
        raise GraphFormatError(str(exc), f"{where}.A") from None


__all__ = [
    "ColoredInterchange", "encode_graph", "phi", "decode_phi", "psi", "psi_order", "gamma",
    "gamma_incidence", "dense_to_sparse", "transduce",
    "colored_interchange_to_dict", "colored_interchange_from_dict",
]
