import itertools

import numpy as np
import pytest

from flipwidth import GraphFormatError
from flipwidth.errors import DomainError
from flipwidth.graphcore import (
    EMPTY,
    FlipCollection,
    Graph,
    apply_flips,
    blockade_flips,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    find_isomorphism,
    graph_from_dict,
    graph_to_dict,
    has_biclique,
    is_isomorphic_small,
    parse,
    path_graph,
    random_graph,
    reachable,
    serialize,
    star_graph,
)

from oracles import ball, flipped_edges, has_biclique_brute, isomorphic


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


class TestApplyFlips:
    def test_empty_collection_is_identity(self):
        g = cycle_graph(5)
        assert apply_flips(g, EMPTY) == g

    def test_complement_of_triangle(self):
        assert apply_flips(complete_graph(3), FlipCollection([{0, 1, 2}])).num_edges == 0

    def test_path_complement(self):
        h = apply_flips(path_graph(3), FlipCollection([{0, 1, 2}]))
        assert sorted(h.edges()) == [(0, 2)]

    def test_involution(self):
        g = random_graph(9, 0.4, np.random.default_rng(1))
        F = FlipCollection([{0, 1, 2, 5}, {2, 3, 8}])
        assert apply_flips(apply_flips(g, F), F) == g

    def test_input_untouched_and_labels_kept(self):
        g = Graph.from_edges(3, [(0, 1)], roles=["lane", "ramp", "plain"], colors=[1, 2, 1])
        before = g.rows
        h = apply_flips(g, FlipCollection([{0, 1, 2}]))
        assert g.rows == before
        assert h.roles == g.roles and h.colors == g.colors

    def test_out_of_range_flip(self):
        with pytest.raises(DomainError):
            apply_flips(path_graph(3), FlipCollection([{0, 7}]))

    def test_order_insensitive_equality(self):
        assert FlipCollection([{1, 2}, {0}]) == FlipCollection([{0}, {2, 1}])

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_parity_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 15))
        g = random_graph(n, 0.5, rng)
        flips = [set(np.flatnonzero(rng.random(n) < 0.5).tolist()) for _ in range(3)]
        assert edge_set(apply_flips(g, FlipCollection(flips))) == flipped_edges(n, g.edges(), flips)


class TestBlockade:
    def test_star_center(self):
        g = star_graph(3)  # centre 0
        F = blockade_flips(g, 0)
        assert F == FlipCollection([{0, 1, 2, 3}, {1, 2, 3}])
        assert apply_flips(g, F).num_edges == 0

    def test_triangle(self):
        h = apply_flips(complete_graph(3), blockade_flips(complete_graph(3), 0))
        assert sorted(h.edges()) == [(1, 2)]

    def test_isolated_vertex(self):
        g = Graph.from_edges(3, [(1, 2)])
        F = blockade_flips(g, 0)
        assert apply_flips(g, F) == g

    def test_random_graphs_postcondition(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(1, 16))
            g = random_graph(n, float(rng.random()), rng)
            for v in range(n):
                h = apply_flips(g, blockade_flips(g, v))
                assert h.degree(v) == 0
                rest = [u for u in range(n) if u != v]
                assert h.induced_subgraph(rest) == g.induced_subgraph(rest)


class TestReachable:
    def test_radius_zero(self):
        assert reachable(cycle_graph(6), EMPTY, 2, 0) == {2}

    def test_path_radius_two(self):
        assert reachable(path_graph(4), EMPTY, 0, 2) == {0, 1, 2}

    def test_isolated_after_complement(self):
        assert reachable(complete_graph(3), FlipCollection([{0, 1, 2}]), 1, None) == {1}

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_bfs_on_materialized_graph(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(2, 14))
        g = random_graph(n, 0.3, rng)
        F = FlipCollection([set(np.flatnonzero(rng.random(n) < 0.5).tolist())])
        h_edges = flipped_edges(n, g.edges(), F.sets())
        for v in range(n):
            for r in (0, 1, 2, 3, None):
                assert reachable(g, F, v, r) == ball(n, h_edges, v, r)

    def test_monotone_in_radius(self):
        g = random_graph(12, 0.2, np.random.default_rng(3))
        for v in range(12):
            prev = set()
            for r in range(6):
                cur = reachable(g, EMPTY, v, r)
                assert prev <= cur
                prev = cur


class TestBiclique:
    def test_c4(self):
        assert has_biclique(cycle_graph(4), 2)

    def test_tree(self):
        assert not has_biclique(star_graph(6), 2)
        assert not has_biclique(path_graph(10), 2)

    def test_subdivided_k5(self):
        from flipwidth.geometry import gen_subdivided_complete

        assert not has_biclique(gen_subdivided_complete(5).graph, 2)

    def test_k33(self):
        assert has_biclique(complete_bipartite(3, 3), 3)
        assert not has_biclique(complete_bipartite(3, 2), 3)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(int(rng.integers(4, 11)), 0.35, rng)
        for t in (1, 2, 3):
            assert has_biclique(g, t) == has_biclique_brute(g, t)


class TestSerialization:
    def test_round_trip(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)], roles=["lane"] * 2 + ["ramp"] * 2, colors=[1, 1, 2, 2])
        assert parse(serialize(g)) == g
        assert serialize(parse(serialize(g))) == serialize(g)

    def test_canonical_edges(self):
        g = graph_from_dict({"n": 3, "edges": [[2, 0], [1, 2]]})
        assert graph_to_dict(g)["edges"] == [[0, 2], [1, 2]]

    @pytest.mark.parametrize("text, where", [
        ('{"n": 2, "edges": [[0, 0]]}', "$.edges[0]"),
        ('{"n": 2, "edges": [[0, 1], [1, 0]]}', "$.edges[1]"),
        ('{"n": 2, "edges": [[0, 5]]}', "$.edges[0]"),
        ('{"n": -1}', "$.n"),
        ('{"n": 2, "roles": ["lane"]}', "$.roles"),
        ('{"n": 2, "edges": [[0, 1]', "line 1"),
    ])
    def test_malformed(self, text, where):
        with pytest.raises(GraphFormatError) as info:
            parse(text)
        assert where in str(info.value)


class TestIsomorphism:
    def test_c4_is_k22(self):
        assert is_isomorphic_small(cycle_graph(4), complete_bipartite(2, 2))

    def test_induced_subgraph(self):
        assert complete_graph(3).induced_subgraph([0, 1]) == complete_graph(2)

    def test_non_isomorphic_same_degrees(self):
        two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert not is_isomorphic_small(two_triangles, cycle_graph(6))

    def test_witness(self):
        g = random_graph(8, 0.5, np.random.default_rng(2))
        perm = list(np.random.default_rng(3).permutation(8))
        h = Graph.from_edges(8, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
        m = find_isomorphism(g, h)
        assert m is not None
        assert all(h.has_edge(m[u], m[v]) for u, v in g.edges())

    def test_agrees_with_networkx(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            n = int(rng.integers(1, 8))
            a, b = random_graph(n, 0.5, rng), random_graph(n, 0.5, rng)
            assert is_isomorphic_small(a, b) == isomorphic(a, b)

    def test_all_four_vertex_graphs_split_into_eleven_classes(self):
        pairs = list(itertools.combinations(range(4), 2))
        graphs = [Graph.from_edges(4, [p for k, p in enumerate(pairs) if m >> k & 1])
                  for m in range(64)]
        reps = []
        for g in graphs:
            if not any(is_isomorphic_small(g, h) for h in reps):
                reps.append(g)
        assert len(reps) == 11
