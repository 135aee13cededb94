"""Randomized invariants, driven by hypothesis."""

import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from flipwidth.diverse import diversity, tilted_grid_ramps
from flipwidth.game import exact_flip_width
from flipwidth.geometry import rig_graph
from flipwidth.graphcore import (
    FlipCollection,
    Graph,
    apply_flips,
    blockade_flips,
    parse,
    reachable,
    serialize,
)
from flipwidth.interchange import (
    build_abstract,
    is_monochromatic,
    lane_equivalence_classes,
    ramsey_extract,
    validate_interchange,
    weak_to_strong,
)
from flipwidth.logic import decode_phi, encode_graph

from oracles import ball, diversity_brute, flip_width_retrograde, flipped_edges, rig_brute

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


@st.composite
def graph_and_flips(draw, max_n=10, max_t=4):
    g = draw(graphs(1, max_n))
    flips = draw(st.lists(st.sets(st.integers(0, g.n - 1)), max_size=max_t))
    return g, flips


@SETTINGS
@given(graph_and_flips())
def test_flips_match_parity_oracle(data):
    g, flips = data
    h = apply_flips(g, FlipCollection(flips))
    assert {frozenset(e) for e in h.edges()} == flipped_edges(g.n, g.edges(), flips)


@SETTINGS
@given(graph_and_flips())
def test_flips_are_involutions_and_commute(data):
    g, flips = data
    F = FlipCollection(flips)
    assert apply_flips(apply_flips(g, F), F) == g
    assert apply_flips(g, FlipCollection(list(reversed(flips)))) == apply_flips(g, F)


@SETTINGS
@given(graphs(1, 12), st.data())
def test_blockade_isolates(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = apply_flips(g, blockade_flips(g, v))
    assert h.degree(v) == 0
    rest = [u for u in range(g.n) if u != v]
    assert h.induced_subgraph(rest) == g.induced_subgraph(rest)


@SETTINGS
@given(graph_and_flips(), st.data())
def test_reachable_matches_bfs(data, more):
    g, flips = data
    v = more.draw(st.integers(0, g.n - 1))
    r = more.draw(st.one_of(st.none(), st.integers(0, 4)))
    edges = flipped_edges(g.n, g.edges(), flips)
    assert reachable(g, FlipCollection(flips), v, r) == ball(g.n, edges, v, r)


@SETTINGS
@given(graphs())
def test_serialization_round_trip(g):
    assert parse(serialize(g)) == g


@SETTINGS
@given(st.integers(4, 14), st.sampled_from(["weak", "strong"]), st.integers(0, 10 ** 6))
def test_random_interchanges_validate(n, mode, seed):
    ic = build_abstract(n, mode, "random", seed=seed)
    assert validate_interchange(ic) == []
    if mode == "weak":
        assert validate_interchange(weak_to_strong(ic)) == []


@SETTINGS
@given(st.integers(5, 12), st.integers(0, 10 ** 6))
def test_ramsey_output(n, seed):
    sub, _ = ramsey_extract(build_abstract(n, "strong", "random", seed=seed))
    assert validate_interchange(sub) == [] and is_monochromatic(sub)


@SETTINGS
@given(st.integers(4, 20), st.data())
def test_lane_classes_bounded(n, data):
    ic = build_abstract(n, "weak", "all")
    flips = data.draw(st.lists(st.sets(st.integers(0, ic.graph.n - 1)), max_size=4))
    assert len(lane_equivalence_classes(ic, FlipCollection(flips))) <= 2 ** len(flips)


@SETTINGS
@given(st.integers(2, 60), st.integers(1, 6))
def test_tilted_grid_spacing(n, k):
    pts = tilted_grid_ramps(n, k)
    assert all(y - x >= k and (x - k * y) % (k * k + 1) == 0 for x, y in pts)
    for (a, b), (c, d) in itertools.combinations(pts, 2):
        assert abs(a - c) + abs(b - d) >= k + 1


@SETTINGS
@given(st.permutations(list(range(9))), st.permutations(list(range(9))))
def test_rig_matches_brute(xs, ys):
    pts = list(zip(xs, ys))
    assert set(rig_graph(pts).edges()) == rig_brute(pts)
    stretched = [(3 * x * x + 1, 5 * y + 2) for x, y in pts]
    assert rig_graph(stretched) == rig_graph(pts)


@SETTINGS
@given(graphs(2, 9), st.data())
def test_diversity_matches_brute(g, data):
    S = data.draw(st.sets(st.integers(0, g.n - 1), min_size=2))
    assert diversity(g, S) == diversity_brute(g, S)


@SETTINGS
@given(graphs(2, 10))
def test_encode_decode_exact(g):
    assert decode_phi(encode_graph(g)).same_edges(g)


@settings(max_examples=25, deadline=None)
@given(graphs(1, 4), st.sampled_from([1, 2, None]))
def test_solver_matches_retrograde(g, r):
    assert exact_flip_width(g, r, 1) == flip_width_retrograde(g.n, list(g.edges()), r, 1)
