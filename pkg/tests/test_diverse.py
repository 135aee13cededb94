import itertools

import numpy as np
import pytest

from flipwidth.diverse import (
    UNCONSTRAINED,
    ColoredSubgraph,
    chi_diversity,
    colored_subgraph_from_dict,
    colored_subgraph_to_dict,
    cube_root_k,
    diverse_interchange_subgraph,
    diversity,
    tilted_grid_ramps,
)
from flipwidth.errors import DomainError, GraphFormatError
from flipwidth.geometry import gen_hypercube
from flipwidth.graphcore import Graph, cycle_graph, dumps, loads, random_graph
from flipwidth.interchange import build_abstract

from oracles import diversity_brute, tilted_grid_brute


class TestDiversity:
    def test_twins(self):
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        assert diversity(g, range(4)) == 0

    def test_q3(self):
        assert diversity(gen_hypercube(3), range(8)) == 2

    def test_adjacent_pair_triangle_free(self):
        # C6 is triangle-free 2-regular; adjacent u, v: N(u) xor N(v) has 2d elements
        g = cycle_graph(6)
        assert diversity(g, [0, 1]) == 2
        assert (g.rows[0] ^ g.rows[1]).bit_count() == 4

    @pytest.mark.parametrize("d", range(3, 8))
    def test_hypercube_regression(self, d):
        assert diversity(gen_hypercube(d), range(1 << d)) == 2 * d - 4

    def test_q2(self):
        assert diversity(gen_hypercube(2), range(4)) == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_brute_oracle(self, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(12, 0.4, rng)
        S = sorted(rng.choice(12, size=int(rng.integers(2, 12)), replace=False).tolist())
        assert diversity(g, S) == diversity_brute(g, S)

    def test_needs_two(self):
        with pytest.raises(DomainError):
            diversity(cycle_graph(4), [0])


class TestChiDiversity:
    def test_single_colour_is_plain(self):
        g = random_graph(10, 0.5, np.random.default_rng(1))
        assert chi_diversity(ColoredSubgraph(g, range(10), [1] * 10)) == diversity(g, range(10))

    def test_improper_edges_ignored(self):
        # 0 and 1 (colour 1) differ only in 2, also colour 1: after filtering they are twins
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 3)])
        cs = ColoredSubgraph(g, [0, 1, 2, 3], [1, 1, 1, 2])
        assert chi_diversity(cs) == 0
        assert diversity(g, [0, 1, 2, 3]) >= 1

    def test_unconstrained(self):
        cs = ColoredSubgraph(cycle_graph(4), [0, 1], [1, 2])
        assert chi_diversity(cs) == UNCONSTRAINED

    def test_validation(self):
        with pytest.raises(DomainError):
            ColoredSubgraph(cycle_graph(4), [], [])
        with pytest.raises(DomainError):
            ColoredSubgraph(cycle_graph(4), [0, 1], [0, 1])

    def test_json_round_trip(self):
        cs = ColoredSubgraph(cycle_graph(5), [0, 2, 4], [1, 2, 1])
        back = colored_subgraph_from_dict(loads(dumps(colored_subgraph_to_dict(cs))))
        assert back.base == cs.base and back.members == cs.members and back.coloring == cs.coloring
        with pytest.raises(GraphFormatError):
            colored_subgraph_from_dict({"n": 2, "edges": []})


class TestTiltedGrid:
    def test_n10_k2(self):
        listed = {(0, 5), (2, 6), (4, 7), (1, 8), (6, 8), (3, 9)}
        # (1, 3) also meets both conditions: 3 - 1 >= 2 and 1 - 6 = -5 = 0 mod 5
        assert set(tilted_grid_ramps(10, 2)) == listed | {(1, 3)}

    def test_k_exceeds_n(self):
        assert tilted_grid_ramps(5, 7) == []

    @pytest.mark.parametrize("n, k", [(30, 1), (50, 3), (80, 4), (120, 5)])
    def test_matches_brute(self, n, k):
        assert set(tilted_grid_ramps(n, k)) == tilted_grid_brute(n, k)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_spacing(self, k):
        pts = tilted_grid_ramps(min(200, 30 * k), k)
        for (a, b), (c, d) in itertools.combinations(pts, 2):
            assert abs(a - c) + abs(b - d) >= k + 1

    def test_bad_k(self):
        with pytest.raises(DomainError):
            tilted_grid_ramps(10, 0)

    def test_cube_root(self):
        assert [cube_root_k(n) for n in (1, 7, 8, 26, 27, 215, 216, 1000)] == [1, 1, 2, 2, 3, 5, 6, 10]


class TestDiverseSubgraph:
    def test_members_and_colours(self):
        ic = build_abstract(64, "weak", "all")
        cs = diverse_interchange_subgraph(ic, 4)
        ramps = [p for p in tilted_grid_ramps(64, 4) if p in ic.ramps]
        assert len(cs.members) == 64 + len(ramps)
        assert cs.coloring == (1,) * 64 + (2,) * len(ramps)

    def test_no_ramps_when_k_large(self):
        ic = build_abstract(8, "weak", "all")
        cs = diverse_interchange_subgraph(ic, 9)
        assert cs.members == ic.lanes

    def test_ramp_degree_counting(self):
        n = 343
        k = cube_root_k(n)
        ic = build_abstract(n, "weak", "all")
        cs = diverse_interchange_subgraph(ic, k)
        sel = [p for p in tilted_grid_ramps(n, k) if p in ic.ramps]
        mask = sum(1 << z for z in cs.members[n:])
        # dense interchange: lane x meets ramp (a, b) exactly when a <= x <= b
        for x, v in enumerate(ic.lanes):
            assert (ic.graph.rows[v] & mask).bit_count() == sum(a <= x <= b for a, b in sel)
        # one selected pair per k^2+1 grid cells, so the typical lane sees on the order of n/(k^2+1)
        mid = (ic.graph.rows[ic.lanes[n // 2]] & mask).bit_count()
        assert n / (k * k + 1) <= mid <= n * n / (k * k + 1)

    def test_monotone_growth(self):
        vals = []
        for n in (64, 125, 216, 343):
            cs = diverse_interchange_subgraph(build_abstract(n, "weak", "all"), cube_root_k(n))
            vals.append(chi_diversity(cs))
        assert vals == sorted(vals)
        assert vals == [2, 3, 4, 5]
