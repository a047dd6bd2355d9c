"""Network compilation, cut classification, enumeration, and max-flow."""

import random

import pytest

import netfuncap as nf
from netfuncap.errors import (
    BudgetExceeded,
    CyclicGraph,
    ReceiverIsSource,
    SourcelessLeaf,
    UnreachableReceiver,
    ValidationError,
)

from conftest import (
    oracle_min_edge_cut,
    oracle_minimal_cuts,
    oracle_separated,
    random_dag,
)


def spec(nodes, edges, sources, receiver="rho", q=2):
    return nf.NetworkSpec(nodes, edges, sources, receiver, q)


class TestCompile:
    def test_single_edge(self, single_edge):
        net, _ = single_edge
        assert net.num_edges == 1
        assert net.out_edges(net.sources[0]) == (0,)
        assert net.in_edges(net.receiver) == (0,)

    def test_diamond_compiles(self, diamond):
        net, _ = diamond
        assert net.num_edges == 4
        assert net.num_sources == 3

    def test_two_cycle_rejected(self):
        with pytest.raises(CyclicGraph):
            nf.compile_network(
                spec(["s1", "rho"], [("s1", "rho"), ("rho", "s1")], ["s1"])
            )

    def test_longer_cycle_rejected(self):
        with pytest.raises(CyclicGraph):
            nf.compile_network(
                spec(
                    ["s1", "a", "b", "rho"],
                    [("s1", "a"), ("a", "b"), ("b", "a"), ("a", "rho")],
                    ["s1"],
                )
            )

    def test_unreachable_receiver(self):
        # b has no path to rho
        with pytest.raises(UnreachableReceiver):
            nf.compile_network(
                spec(
                    ["s1", "b", "rho"],
                    [("s1", "rho"), ("s1", "b")],
                    ["s1"],
                )
            )

    def test_sourceless_leaf(self):
        with pytest.raises(SourcelessLeaf):
            nf.compile_network(
                spec(["s1", "v", "rho"], [("s1", "rho"), ("v", "rho")], ["s1"])
            )

    def test_receiver_is_source(self):
        with pytest.raises(ReceiverIsSource):
            nf.compile_network(
                spec(["s1", "rho"], [("s1", "rho")], ["s1", "rho"])
            )

    def test_unknown_edge_node(self):
        with pytest.raises(ValidationError):
            nf.compile_network(spec(["s1", "rho"], [("s1", "ghost")], ["s1"]))

    def test_small_alphabet_rejected(self):
        with pytest.raises(ValidationError):
            nf.compile_network(spec(["s1", "rho"], [("s1", "rho")], ["s1"], q=1))

    def test_compile_deterministic(self, butterfly):
        net, _ = butterfly
        again = nf.compile_network(net.spec)
        assert again.edges == net.edges
        assert again.topo_order == net.topo_order


class TestClassifyCut:
    def test_diamond_receiver_edges_separate_everything(self, diamond):
        net, _ = diamond
        cut = nf.classify_cut(net, {2, 3})
        assert cut.separated == frozenset({1, 2, 3})

    def test_diamond_single_relay_edge_is_not_a_cut(self, diamond):
        net, _ = diamond
        assert nf.classify_cut(net, {0}) is None

    def test_single_edge_cut(self, single_edge):
        net, _ = single_edge
        assert nf.classify_cut(net, {0}).separated == frozenset({1})

    def test_matches_reachability_oracle_on_random_subsets(self, butterfly):
        net, _ = butterfly
        rng = random.Random(7)
        for _ in range(200):
            subset = frozenset(
                e for e in range(net.num_edges) if rng.random() < 0.4
            )
            expected = oracle_separated(net, subset)
            got = nf.classify_cut(net, subset)
            assert (got.separated if got else frozenset()) == expected


class TestEnumerateCuts:
    def test_single_edge(self, single_edge):
        net, _ = single_edge
        cuts = nf.enumerate_cuts(net)
        assert [(sorted(c.edge_set), sorted(c.separated)) for c in cuts] == [
            ([0], [1])
        ]

    def test_diamond_contains_expected_cuts(self, diamond):
        net, _ = diamond
        cuts = {c.edge_set: c.separated for c in nf.enumerate_cuts(net)}
        assert cuts[frozenset({2, 3})] == frozenset({1, 2, 3})
        assert cuts[frozenset({2})] == frozenset({1})

    def test_line3_receiver_edge_cut(self, line3):
        net, _ = line3
        cuts = {c.edge_set: c.separated for c in nf.enumerate_cuts(net)}
        # the single edge into the receiver separates all three sources
        assert cuts[frozenset({2})] == frozenset({1, 2, 3})

    @pytest.mark.parametrize("example", ["diamond", "N3", "single_edge"])
    def test_matches_subset_oracle(self, example):
        net = nf.compile_network(nf.builtin_example(example)[0])
        expected = oracle_minimal_cuts(net)
        got = {c.edge_set: c.separated for c in nf.enumerate_cuts(net)}
        assert got == expected

    def test_matches_subset_oracle_on_random_dags(self):
        rng = random.Random(2024)
        for _ in range(12):
            net = random_dag(rng, max_edges=6)
            expected = oracle_minimal_cuts(net)
            got = {c.edge_set: c.separated for c in nf.enumerate_cuts(net)}
            assert got == expected

    def test_classify_reproduces_separated(self, butterfly):
        net, _ = butterfly
        for cut in nf.enumerate_cuts(net):
            assert nf.classify_cut(net, cut.edge_set).separated == cut.separated

    def test_edge_removal_shrinks_separated(self, butterfly):
        net, _ = butterfly
        for cut in nf.enumerate_cuts(net):
            for e in cut.edge_set:
                smaller = nf.classify_cut(net, cut.edge_set - {e})
                assert smaller is None or smaller.separated < cut.separated

    def test_deterministic_order(self, butterfly):
        net, _ = butterfly
        first = [tuple(sorted(c.edge_set)) for c in nf.enumerate_cuts(net)]
        second = [tuple(sorted(c.edge_set)) for c in nf.enumerate_cuts(net)]
        assert first == second == sorted(first)

    def test_budget(self, butterfly):
        net, _ = butterfly
        with pytest.raises(BudgetExceeded):
            nf.enumerate_cuts(net, edge_budget=3)


class TestMinEdgeCut:
    def test_diamond_all_sources(self, diamond):
        net, _ = diamond
        size, witness = nf.min_edge_cut(net, {1, 2, 3})
        assert size == oracle_min_edge_cut(net, {1, 2, 3}) == 2
        assert witness.edge_set == frozenset({2, 3})

    def test_butterfly_both_sources(self, butterfly):
        net, _ = butterfly
        size, _ = nf.min_edge_cut(net, {1, 2})
        assert size == 2

    def test_line3_last_source(self, line3):
        net, _ = line3
        size, _ = nf.min_edge_cut(net, {3})
        assert size == 1

    def test_witness_superset_and_size_on_random_dags(self):
        rng = random.Random(99)
        for _ in range(10):
            net = random_dag(rng, max_edges=7)
            for mask in range(1, 2**net.num_sources):
                wanted = {
                    i + 1 for i in range(net.num_sources) if mask >> i & 1
                }
                size, witness = nf.min_edge_cut(net, wanted)
                assert size == oracle_min_edge_cut(net, wanted)
                assert wanted <= set(witness.separated)
                assert len(witness.edge_set) == size

    def test_cross_method_min_cut_size(self, diamond, butterfly, line3):
        for net, _ in (diamond, butterfly, line3):
            enum_min = min(len(c.edge_set) for c in nf.enumerate_cuts(net))
            flow_min = min(
                nf.min_edge_cut(net, {i + 1})[0]
                for i in range(net.num_sources)
            )
            assert enum_min == flow_min


class TestMultiEdgeTree:
    def test_line_is_tree(self, line3):
        net, _ = line3
        assert nf.is_multi_edge_tree(net)

    def test_diamond_is_not_tree(self, diamond):
        net, _ = diamond
        assert not nf.is_multi_edge_tree(net)

    def test_single_edge_is_tree(self, single_edge):
        net, _ = single_edge
        assert nf.is_multi_edge_tree(net)

    def test_parallel_edges_are_tree(self):
        net = nf.compile_network(
            spec(["s1", "rho"], [("s1", "rho"), ("s1", "rho")], ["s1"])
        )
        assert nf.is_multi_edge_tree(net)
