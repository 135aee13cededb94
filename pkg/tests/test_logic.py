import itertools

import numpy as np
import pytest

from flipwidth.errors import DomainError, GraphFormatError
from flipwidth.graphcore import Graph, complete_graph, dumps, loads, random_graph
from flipwidth.interchange import (
    Interchange,
    build_abstract,
    optional_incidence_kind,
    validate_interchange,
)
from flipwidth.logic import (
    ColoredInterchange,
    colored_interchange_from_dict,
    colored_interchange_to_dict,
    decode_phi,
    dense_to_sparse,
    encode_graph,
    gamma_incidence,
    psi_order,
    transduce,
)

from oracles import all_graphs


def dense(n):
    return ColoredInterchange(build_abstract(n, "strong", "all"))


class TestEncode:
    def test_triangle(self):
        ci = encode_graph(complete_graph(3))
        assert ci.ic.order == 3 and optional_incidence_kind(ci.ic) == "sparse"
        assert ci.A == ci.R and len(ci.A) == 3

    def test_edgeless(self):
        assert encode_graph(Graph.empty(4)).A == frozenset()

    def test_single_edge(self):
        ci = encode_graph(Graph.from_edges(4, [(1, 3)]))
        assert ci.A == {ci.ic.ramps[(1, 3)]}

    def test_too_small(self):
        with pytest.raises(DomainError):
            encode_graph(Graph.empty(1))

    def test_marks_must_be_ramps(self):
        ic = build_abstract(3, "strong", "none")
        with pytest.raises(DomainError):
            ColoredInterchange(ic, {ic.lanes[0]})


class TestDecode:
    def test_triangle(self):
        assert decode_phi(encode_graph(complete_graph(3))) == complete_graph(3)

    def test_no_marks_edgeless(self):
        assert decode_phi(encode_graph(Graph.empty(5))).num_edges == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive_round_trip(self, n):
        for g in all_graphs(n):
            assert decode_phi(encode_graph(g)).same_edges(g)

    def test_random_round_trip(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            n = int(rng.integers(2, 11))
            g = random_graph(n, float(rng.random()), rng)
            assert decode_phi(encode_graph(g)).same_edges(g)

    def test_lane_subset(self):
        g = Graph.from_edges(4, [(0, 2), (2, 3)])
        ci = encode_graph(g)
        sub = decode_phi(ci, [ci.ic.lanes[k] for k in (0, 2, 3)])
        assert sorted(sub.edges()) == [(0, 1), (1, 2)]


class TestPsi:
    def test_first_lane(self):
        assert psi_order(dense(4), 0, 1)

    def test_examples(self):
        ci = dense(4)
        assert psi_order(ci, 2, 3)
        assert not psi_order(ci, 3, 2)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_strict_total_order(self, n):
        ci = dense(n)
        for x, y in itertools.product(range(n), repeat=2):
            assert psi_order(ci, x, y) == (x < y)


class TestGamma:
    def test_example(self):
        ci = dense(5)
        z = ci.ic.ramps[(1, 3)]
        assert [gamma_incidence(ci, x, z) for x in (1, 2, 3)] == [True, False, True]
        assert not gamma_incidence(ci, 0, z)

    def test_consecutive(self):
        ci = dense(6)
        for i in range(5):
            z = ci.ic.ramps[(i, i + 1)]
            assert gamma_incidence(ci, i, z) and gamma_incidence(ci, i + 1, z)

    @pytest.mark.parametrize("n", range(3, 10))
    def test_dense_to_sparse(self, n):
        ci = dense(n)
        sparse = dense_to_sparse(ci)
        assert sparse.same_edges(build_abstract(n, "strong", "none").graph)
        ic = Interchange(sparse, ci.ic.lanes, ci.ic.ramps, "strong")
        assert validate_interchange(ic) == [] and optional_incidence_kind(ic) == "sparse"


class TestTransduce:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exhaustive(self, n):
        for g in all_graphs(n):
            _, decoded = transduce(g)
            assert decoded.same_edges(g)

    def test_random(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            g = random_graph(int(rng.integers(5, 9)), 0.5, rng)
            sparse, decoded = transduce(g)
            assert decoded.same_edges(g)
            assert sparse.same_edges(build_abstract(g.n, "strong", "none").graph)


class TestJson:
    def test_round_trip(self):
        ci = encode_graph(Graph.from_edges(4, [(0, 1), (2, 3)]))
        d = loads(dumps(colored_interchange_to_dict(ci)))
        assert d["A"] == sorted(ci.A)
        back = colored_interchange_from_dict(d)
        assert back.A == ci.A and back.ic == ci.ic

    def test_bad_marks(self):
        d = colored_interchange_to_dict(encode_graph(complete_graph(3)))
        d["A"] = [0]
        with pytest.raises(GraphFormatError):
            colored_interchange_from_dict(d)
        d["A"] = "x"
        with pytest.raises(GraphFormatError):
            colored_interchange_from_dict(d)
