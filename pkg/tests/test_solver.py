import numpy as np
import pytest

from flipwidth.acceptance import NAMED_SMALL, SOLVER_REGRESSION
from flipwidth.errors import DomainError, ResourceLimitError
from flipwidth.game import (
    cops_win,
    exact_flip_width,
    flipped_graphs,
    game_tree_cops_win,
    game_tree_flip_width,
)
from flipwidth.graphcore import Graph, complete_graph, cycle_graph, path_graph, random_graph, star_graph

from oracles import cops_win_retrograde, flip_width_retrograde


def test_edgeless_is_zero():
    for n in range(0, 6):
        assert exact_flip_width(Graph.empty(n), 1, 1) == 0


@pytest.mark.parametrize("r", [0, 1, 2, None])
def test_k2_is_one(r):
    assert exact_flip_width(complete_graph(2), r, 2) == 1


@pytest.mark.parametrize("key", sorted(SOLVER_REGRESSION, key=str))
def test_frozen_constants(key):
    name, r, t_max = key
    assert exact_flip_width(NAMED_SMALL[name], r, t_max) == SOLVER_REGRESSION[key]


@pytest.mark.parametrize("key", [k for k in SOLVER_REGRESSION if k[2] == 1])
def test_frozen_constants_match_oracle(key):
    name, r, t_max = key
    g = NAMED_SMALL[name]
    assert flip_width_retrograde(g.n, list(g.edges()), r, t_max) == SOLVER_REGRESSION[key]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["P4", "C4"])
def test_two_flips_confirmed_by_oracle(name):
    g = NAMED_SMALL[name]
    assert cops_win_retrograde(g.n, list(g.edges()), 1, 2)
    assert not cops_win_retrograde(g.n, list(g.edges()), 1, 1)


@pytest.mark.parametrize("seed", range(20))
def test_agrees_with_independent_oracle(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(1, 6))
    g = random_graph(n, float(rng.uniform(0.2, 0.8)), rng)
    for r in (1, 2, None):
        want = flip_width_retrograde(n, list(g.edges()), r, 1)
        assert exact_flip_width(g, r, 1) == want
        assert game_tree_flip_width(g, r, 1) == want


def test_two_flips_agree_on_small_graphs():
    rng = np.random.default_rng(77)
    for _ in range(6):
        n = int(rng.integers(2, 5))
        g = random_graph(n, 0.6, rng)
        assert cops_win(g, 1, 2) == game_tree_cops_win(g, 1, 2)


def test_star_is_one():
    # flip the centre with all leaves, then the robber on a leaf is stuck
    assert exact_flip_width(star_graph(3), 1, 2) in (1, 2)
    assert exact_flip_width(star_graph(3), 1, 2) == flip_width_retrograde(4, list(star_graph(3).edges()), 1, 2)


def test_nondecreasing_in_radius():
    rng = np.random.default_rng(4)
    graphs = [path_graph(4), cycle_graph(5), star_graph(3)] + [random_graph(5, 0.5, rng) for _ in range(8)]
    for g in graphs:
        vals = [exact_flip_width(g, r, 2) for r in (1, 2, None)]
        vals = [3 if v is None else v for v in vals]
        assert vals == sorted(vals)


def test_flipped_graph_enumeration():
    g = path_graph(3)
    graphs = flipped_graphs(g, 1)
    assert graphs[0] == g.rows
    # subsets of size >= 2 of 3 vertices: 4, each giving a distinct graph
    assert len(graphs) == 5


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        exact_flip_width(random_graph(9, 0.5, np.random.default_rng(0)), 1, 2, max_states=1000)


def test_bad_t_max():
    with pytest.raises(DomainError):
        exact_flip_width(path_graph(2), 1, -1)
