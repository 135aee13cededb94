import itertools
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from flipwidth.errors import ConstructionError, DomainError
from flipwidth.geometry import (
    Scene,
    beta_skeleton_graph,
    chord_intersection_graph,
    delaunay_graph,
    delaunay_graph_bruteforce,
    designated_view,
    even_subgraph,
    gen_beta_skeleton,
    gen_delaunay_points,
    gen_hypercube,
    gen_intervals,
    gen_rig_points,
    gen_segments,
    gen_subdivided_bipartite,
    gen_subdivided_complete,
    gen_unit_distance,
    gen_unit_squares,
    gen_visibility_polygon,
    hypercube_interchange,
    interval_containment_graph,
    interval_intersection_graph,
    lune_contains,
    permutation_to_chords,
    realize,
    render_grid_pairs,
    render_svg,
    rig_graph,
    scene_from_dict,
    scene_to_dict,
    segment_intersection_graph,
    square_intersection_graph,
    stereographic_project,
    torus_pole,
    unit_disk_graph,
    unit_distance_graph,
    visibility_graph,
)
from flipwidth.geometry.delaunay import PERTURBATION, _normalize
from flipwidth.geometry.families import FAMILIES
from flipwidth.diverse import tilted_grid_ramps
from flipwidth.graphcore import Graph, cycle_graph, has_biclique, loads, dumps
from flipwidth.interchange import optional_incidence_kind, validate_interchange

from oracles import (
    beta_skeleton_brute,
    hypercube_nx,
    interval_contains,
    intervals_overlap,
    isomorphic,
    rig_brute,
    scipy_delaunay_edges,
    shapely_visible,
)


def nbrs(g, v):
    return set(g.neighbors(v))


class TestIntervals:
    def test_order_five(self):
        s = gen_intervals(5)
        g = interval_intersection_graph(s)
        assert len(s) == 12
        z = s.ramps[(0, 2)]
        assert {v for v in nbrs(g, z) if v in s.lanes} == {0, 1, 2}
        assert validate_interchange(s.interchange(g)) == []
        assert optional_incidence_kind(s.interchange(g)) == "dense"

    def test_distinct_endpoints(self):
        s = gen_intervals(9)
        ends = [x for iv in s.objects for x in iv]
        assert len(set(ends)) == len(ends)

    def test_overlap_oracle(self):
        s = gen_intervals(7)
        g = interval_intersection_graph(s)
        for a, b in itertools.combinations(range(len(s)), 2):
            assert g.has_edge(a, b) == intervals_overlap(s.objects[a], s.objects[b])

    def test_containment(self):
        s = gen_intervals(6)
        g = interval_containment_graph(s)
        for a, b in itertools.combinations(range(len(s)), 2):
            want = interval_contains(s.objects[a], s.objects[b]) or interval_contains(s.objects[b], s.objects[a])
            assert g.has_edge(a, b) == want
        assert not any(g.has_edge(a, b) for a, b in itertools.combinations(s.lanes, 2))
        assert validate_interchange(s.interchange(g)) == []

    def test_disjoint_no_edge(self):
        s = Scene("intervals", [(Fraction(0), Fraction(1)), (Fraction(2), Fraction(3))], ["plain"] * 2)
        assert interval_intersection_graph(s).num_edges == 0

    def test_too_small(self):
        with pytest.raises(DomainError):
            gen_intervals(3)


class TestChords:
    @pytest.mark.parametrize("n", [4, 5, 8])
    def test_equals_containment(self, n):
        s = gen_intervals(n)
        assert chord_intersection_graph(permutation_to_chords(s)).same_edges(interval_containment_graph(s))

    def test_nested_and_disjoint(self):
        s = Scene("intervals", [(Fraction(0), Fraction(5)), (Fraction(1), Fraction(2)),
                                (Fraction(6), Fraction(7))], ["plain"] * 3)
        g = chord_intersection_graph(permutation_to_chords(s))
        assert sorted(g.edges()) == [(0, 1)]


class TestSegments:
    def test_order_five(self):
        s = gen_segments(5)
        g = segment_intersection_graph(s)
        z = s.ramps[(0, 2)]
        assert {v for v in nbrs(g, z) if v in s.lanes} == {0, 1, 2}
        assert validate_interchange(s.interchange(g)) == []
        assert optional_incidence_kind(s.interchange(g)) == "dense"

    def test_no_ramp_ramp_edges(self):
        s = gen_segments(6)
        g = segment_intersection_graph(s)
        ramps = list(s.ramps.values())
        assert not any(g.has_edge(a, b) for a, b in itertools.combinations(ramps, 2))


class TestSquares:
    def test_order_five(self):
        s = gen_unit_squares(5)
        ic = s.interchange(square_intersection_graph(s))
        assert validate_interchange(ic) == []
        assert optional_incidence_kind(ic) == "dense"

    def test_corner_touch(self):
        F = Fraction
        s = Scene("squares", [((F(0), F(0)), (F(1), F(1))), ((F(1), F(1)), (F(2), F(2)))], ["plain"] * 2)
        assert square_intersection_graph(s).has_edge(0, 1)

    def test_unit_size(self):
        for (x0, y0), (x1, y1) in gen_unit_squares(7).objects:
            assert x1 - x0 == 1 and y1 - y0 == 1


class TestUnitDistance:
    def test_algebra(self):
        n = 8
        s = gen_unit_distance(n)
        P = np.array(s.objects)
        for (i, j), z in s.ramps.items():
            for lane in range(n):
                d = float(np.linalg.norm(P[z] - P[lane]))
                if lane in (i, j):
                    assert abs(d - 1) < 1e-12
                elif i < lane < j:
                    assert d < 1 - 1e-6
                else:
                    assert d > 1 + 1e-6

    @pytest.mark.parametrize("n", [5, 6, 11])
    def test_graphs_validate(self, n):
        s = gen_unit_distance(n)
        ic = s.interchange(unit_distance_graph(s))
        assert validate_interchange(ic) == [] and optional_incidence_kind(ic) == "sparse"
        ic2 = realize("unit-disk", n).interchange
        assert validate_interchange(ic2) == [] and optional_incidence_kind(ic2) == "dense"

    def test_tolerance_stable(self):
        s = gen_unit_distance(9)
        assert unit_distance_graph(s, 1e-9) == unit_distance_graph(s, 1e-8)
        assert unit_disk_graph(s, 1e-9) == unit_disk_graph(s, 1e-8)


class TestVisibility:
    def test_convex_polygon(self):
        F = Fraction
        sq = Scene("polygon", [(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))], ["plain"] * 4)
        assert visibility_graph(sq).num_edges == 6

    def test_order_five(self):
        s = gen_visibility_polygon(5)
        keep, lanes, ramps = designated_view(s)
        g = visibility_graph(s, keep)
        from flipwidth.interchange import Interchange

        ic = Interchange(g, lanes, ramps, "weak")
        assert validate_interchange(ic) == [] and optional_incidence_kind(ic) == "dense"

    def test_out_of_range_blocked(self):
        s = gen_visibility_polygon(6)
        g = visibility_graph(s)
        z = s.ramps[(0, 2)]
        assert not g.has_edge(z, s.lanes[4])

    @pytest.mark.parametrize("n", [5, 6])
    def test_matches_shapely(self, n):
        s = gen_visibility_polygon(n)
        g = visibility_graph(s)
        V = s.objects
        for a, b in itertools.combinations(range(len(V)), 2):
            assert g.has_edge(a, b) == shapely_visible(V, a, b), (a, b)

    def test_small_n(self):
        with pytest.raises(DomainError):
            gen_visibility_polygon(4)


class TestBeta:
    def test_limit_disk(self):
        # close to beta = 1 the lune is nearly the diameter disk
        assert lune_contains((0, 0), (2, 0), (1, Fraction(1, 2)), Fraction(999, 1000))
        assert not lune_contains((0, 0), (2, 0), (1, Fraction(3, 2)), Fraction(999, 1000))

    def test_two_points(self):
        assert beta_skeleton_graph([(0, 0), (1, 0)], 0.9).num_edges == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_disk_oracle(self, seed):
        rng = np.random.default_rng(seed)
        pts = [tuple(p) for p in rng.random((14, 2)).round(6)]
        beta = float(rng.uniform(0.3, 0.95))
        g = beta_skeleton_graph(pts, beta)
        assert set(g.edges()) == beta_skeleton_brute(pts, beta)

    def test_order_five(self):
        real = realize("beta", 5)
        assert real.problems() == []

    def test_bad_beta(self):
        with pytest.raises(DomainError):
            gen_beta_skeleton(5, 1.0)


class TestCubes:
    def test_hypercube_matches_networkx(self):
        for d in range(1, 6):
            assert isomorphic(gen_hypercube(d), Graph.from_edges(1 << d, list(hypercube_nx(d).edges())))

    def test_hypercube_interchange_five(self):
        ic = hypercube_interchange(5)
        assert len(ic.lanes) == 5 and len(ic.ramps) == 10
        assert validate_interchange(ic) == [] and optional_incidence_kind(ic) == "sparse"

    def test_subdivided(self):
        ic = gen_subdivided_complete(4)
        assert ic.graph.n == 10 and validate_interchange(ic) == []
        b = gen_subdivided_bipartite(2, 2)
        assert not has_biclique(b, 2)
        assert isomorphic(b, cycle_graph(8))


class TestRig:
    def test_base_case(self):
        pts, Y = gen_rig_points(1)
        assert pts == [(0, 0), (1, 1)]
        assert rig_graph(pts).has_edge(0, 1)

    def test_sizes(self):
        assert [len(gen_rig_points(d)[0]) for d in range(1, 6)] == [2, 5, 13, 33, 81]

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_induces_hypercube(self, d):
        pts, Y = gen_rig_points(d)
        sub = rig_graph(pts).induced_subgraph(Y)
        assert sub.same_edges(gen_hypercube(d))

    def test_brute_oracle(self):
        pts, _ = gen_rig_points(4)
        assert set(rig_graph(pts).edges()) == rig_brute(pts)
        rng = np.random.default_rng(3)
        for _ in range(10):
            xs, ys = rng.permutation(12), rng.permutation(12)
            P = list(zip(xs.tolist(), ys.tolist()))
            assert set(rig_graph(P).edges()) == rig_brute(P)

    def test_only_order_matters(self):
        pts, _ = gen_rig_points(3)
        warped = [(x ** 3 + 7, 2 ** y) for x, y in pts]
        assert rig_graph(pts) == rig_graph(warped)


class TestDelaunay:
    def test_point_count(self):
        assert len(gen_delaunay_points(4)) == 24

    def test_odd_rejected(self):
        with pytest.raises(DomainError):
            gen_delaunay_points(5)

    def test_order_four(self):
        g = delaunay_graph(4)
        ev = even_subgraph(4, g)
        assert isomorphic(ev, cycle_graph(8))
        assert not has_biclique(ev, 2)

    def test_matches_scipy(self):
        scene = gen_delaunay_points(4)
        P3 = stereographic_project(scene.objects, torus_pole(4))
        # the unperturbed set is cospherical, so compare on the jittered copy
        base = _normalize(np.asarray(P3))
        jittered = base + np.random.default_rng(0).uniform(-PERTURBATION, PERTURBATION, base.shape)
        ours = delaunay_graph_bruteforce(P3, perturb_seed=0)
        assert set(ours.edges()) == scipy_delaunay_edges(jittered)

    def test_random_points_match_scipy(self):
        P = np.random.default_rng(2).random((18, 3))
        assert set(delaunay_graph_bruteforce(P).edges()) == scipy_delaunay_edges(P)

    def test_seeds_agree_on_contract(self):
        a = even_subgraph(4, delaunay_graph(4, 0))
        b = even_subgraph(4, delaunay_graph(4, 5))
        assert isomorphic(a, b)

    def test_projection_on_sphere(self):
        scene = gen_delaunay_points(4)
        assert np.allclose(np.linalg.norm(np.array(scene.objects), axis=1), 1)
        with pytest.raises(ConstructionError):
            stereographic_project([torus_pole(4)], torus_pole(4))

    @pytest.mark.slow
    def test_order_six(self):
        assert realize("delaunay", 6).problems() == []


class TestSvg:
    def test_deterministic_and_valid(self):
        a = render_svg(gen_intervals(5))
        assert a == render_svg(gen_intervals(5))
        root = ET.fromstring(a)
        assert root.tag.endswith("svg") and len(root) >= 12

    def test_empty_scene(self):
        root = ET.fromstring(render_svg(Scene("intervals", [], [])))
        assert len(root) == 0

    def test_tilted_grid(self):
        root = ET.fromstring(render_grid_pairs(tilted_grid_ramps(40, 4), 40))
        assert len(root) == len(tilted_grid_ramps(40, 4))

    @pytest.mark.parametrize("family", ["segments", "squares", "unit-distance", "visibility", "chords"])
    def test_other_scenes(self, family):
        ET.fromstring(render_svg(realize(family, 5).scene))

    def test_interchange(self):
        ET.fromstring(render_svg(realize("abstract-dense", 6).interchange))


class TestSceneJson:
    @pytest.mark.parametrize("family", ["intervals", "segments", "unit-distance", "visibility"])
    def test_round_trip(self, family):
        s = realize(family, 5).scene
        back = scene_from_dict(loads(dumps(scene_to_dict(s))))
        assert back.objects == s.objects and back.roles == s.roles
        assert back.lanes == s.lanes and dict(back.ramps) == dict(s.ramps)


class TestFamilies:
    FAST = [f for f in FAMILIES if f not in ("delaunay", "rig", "hypercube")]

    @pytest.mark.parametrize("family", FAST)
    @pytest.mark.parametrize("n", [5, 8, 12])
    def test_contract(self, family, n):
        assert realize(family, n).problems() == []

    @pytest.mark.parametrize("d", [3, 4, 6])
    def test_dimension_families(self, d):
        assert realize("rig", d=d).problems() == []
        assert realize("hypercube", d=d).problems() == []

    def test_unknown(self):
        with pytest.raises(DomainError):
            realize("nope", 5)

    @pytest.mark.slow
    @pytest.mark.parametrize("family", FAST)
    def test_order_thirty(self, family):
        assert realize(family, 30).problems() == []
