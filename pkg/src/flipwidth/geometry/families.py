"""One entry point per named construction, with its structural contract."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..errors import DomainError
from ..graphcore import Graph, has_biclique
from ..interchange import Interchange, build_abstract, optional_incidence_kind, validate_interchange
from . import cubes, delaunay, intervals, metric, visibility
from .scene import Scene


@dataclass
class Realization:
    family: str
    graph: Graph
    scene: Scene | None = None
    interchange: Interchange | None = None
    expected_kind: str | None = None  # "dense" / "sparse" optional lane-ramp incidence
    reference: Graph | None = None  # labelled graph the induced subgraph must equal
    reference_vertices: list[int] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def problems(self) -> list[str]:
        """Contract failures; an empty list means the realization is correct."""
        out = []
        if self.interchange is not None:
            out += [str(v) for v in validate_interchange(self.interchange)]
            if not out and self.expected_kind:
                kind = optional_incidence_kind(self.interchange)
                if kind != self.expected_kind:
                    out.append(f"optional lane-ramp edges are {kind}, expected {self.expected_kind}")
        if self.reference is not None:
            sub = self.graph.induced_subgraph(self.reference_vertices)
            if not sub.same_edges(self.reference):
                out.append("induced subgraph differs from the reference graph")
        if self.family == "delaunay" and self.reference is not None:
            if has_biclique(self.graph.induced_subgraph(self.reference_vertices), 2):
                out.append("even subgraph contains K2,2")
        return out


def _scene_family(gen: Callable[[int], Scene], graph_of: Callable[[Scene], Graph], kind: str):
    def build(n: int, **_):
        scene = gen(n)
        g = graph_of(scene)
        return Realization("", g, scene, scene.interchange(g), kind, params={"n": n})
    return build


def _chords(n: int, **_):
    scene = intervals.permutation_to_chords(intervals.gen_intervals(n))
    g = intervals.chord_intersection_graph(scene)
    return Realization("", g, scene, scene.interchange(g), "dense", params={"n": n})


def _visibility(n: int, **_):
    scene = visibility.gen_visibility_polygon(n)
    keep, lanes, ramps = visibility.designated_view(scene)
    g = visibility.visibility_graph(scene, keep)
    return Realization("", g, scene, Interchange(g, lanes, ramps, "weak"), "dense",
                       params={"n": n})


def _beta(n: int, beta: float = 0.9, **_):
    scene, g = metric.beta_construction(n, beta)
    return Realization("", g, scene, scene.interchange(g), "dense", params={"n": n, "beta": beta})


def _rig(d: int, **_):
    pts, Y = cubes.gen_rig_points(d)
    scene = Scene("points2d", pts, ["plain"] * len(pts), meta={"Y": Y})
    return Realization("", cubes.rig_graph(pts), scene, reference=cubes.gen_hypercube(d),
                       reference_vertices=Y, params={"d": d})


def _hypercube(d: int, **_):
    ic = cubes.hypercube_interchange(d)
    return Realization("", ic.graph, None, ic, "sparse", params={"d": d})


def _subdivided(n: int, **_):
    ic = cubes.gen_subdivided_complete(n)
    return Realization("", ic.graph, None, ic, "sparse", params={"n": n})


def _delaunay(n: int, seed: int = 0, **_):
    scene = delaunay.gen_delaunay_points(n)
    g = delaunay.delaunay_graph(n, seed)
    ref = cubes.gen_subdivided_bipartite(n // 2, n // 2)
    return Realization("", g, scene, reference=ref, reference_vertices=delaunay.even_vertices(n),
                       params={"n": n, "seed": seed})


def _abstract(optional: str):
    def build(n: int, **_):
        ic = build_abstract(n, "weak", optional)
        return Realization("", ic.graph, None, ic, "dense" if optional == "all" else "sparse",
                           params={"n": n})
    return build


FAMILIES: dict[str, Callable[..., Realization]] = {
    "intervals": _scene_family(intervals.gen_intervals, intervals.interval_intersection_graph, "dense"),
    "containment": _scene_family(intervals.gen_intervals, intervals.interval_containment_graph, "dense"),
    "chords": _chords,
    "segments": _scene_family(intervals.gen_segments, intervals.segment_intersection_graph, "dense"),
    "squares": _scene_family(intervals.gen_unit_squares, intervals.square_intersection_graph, "dense"),
    "unit-distance": _scene_family(metric.gen_unit_distance, metric.unit_distance_graph, "sparse"),
    "unit-disk": _scene_family(metric.gen_unit_disks, metric.unit_disk_graph, "dense"),
    "visibility": _visibility,
    "beta": _beta,
    "rig": _rig,
    "hypercube": _hypercube,
    "subdivided-complete": _subdivided,
    "delaunay": _delaunay,
    "abstract-dense": _abstract("all"),
    "abstract-sparse": _abstract("none"),
}

# families parameterized by a dimension rather than an order
DIMENSION_FAMILIES = ("rig", "hypercube")


def realize(family: str, n: int | None = None, d: int | None = None, beta: float = 0.9,
            seed: int = 0) -> Realization:
    """Build the named construction; ``d`` (or ``n``) sizes the dimension families."""
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    size = (d if d is not None else n) if family in DIMENSION_FAMILIES else n
    if size is None:
        raise DomainError(f"family {family!r} needs a size")
    real = FAMILIES[family](size, beta=beta, seed=seed)
    real.family = family
    return real
