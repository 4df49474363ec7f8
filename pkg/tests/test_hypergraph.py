import numpy as np
import pytest

import hyperwalk as hw
from conftest import random_connected_instances


class TestBuild:
    def test_worked_example_degrees(self, worked_example):
        h = worked_example
        assert h.node_count == 5
        assert h.hyperedge_count == 3
        np.testing.assert_allclose(h.hyperedge_degree, [3.0, 2.0, 2.0])
        np.testing.assert_allclose(h.node_degree, [1.0, 1.0, 2.0, 2.0, 1.0])

    def test_singleton_hyperedge(self):
        h = hw.build_hypergraph([[0]])
        np.testing.assert_allclose(h.node_degree, [1.0])
        np.testing.assert_allclose(h.hyperedge_degree, [1.0])

    def test_zero_weight_rejected(self):
        with pytest.raises(hw.NonPositiveWeight):
            hw.build_hypergraph([[(0, 0.0), (1, 1.0)]])

    def test_negative_weight_rejected(self):
        with pytest.raises(hw.NonPositiveWeight):
            hw.build_hypergraph([[(0, -2.0)]])

    def test_duplicate_membership_rejected(self):
        with pytest.raises(hw.DuplicateMembership):
            hw.build_hypergraph([[0, 1, 0]])

    def test_node_out_of_range(self):
        with pytest.raises(hw.NodeOutOfRange):
            hw.build_hypergraph([[0, 7]], num_nodes=3)
        with pytest.raises(hw.NodeOutOfRange):
            hw.build_hypergraph([[-1, 2]])

    def test_weighted_incidence_lookup(self):
        h = hw.build_hypergraph([[(0, 3.0), (1, 5.0)], [(1, 2.0)]])
        edges, weights = h.node_incidence(1)
        assert edges.tolist() == [0, 1]
        assert weights.tolist() == [5.0, 2.0]
        nodes, weights = h.hyperedge_incidence(0)
        assert nodes.tolist() == [0, 1]
        assert weights.tolist() == [3.0, 5.0]

    def test_incidence_views_are_transposes(self):
        for h in random_connected_instances(20, seed=11):
            forward = set()
            for i in range(h.node_count):
                edges, weights = h.node_incidence(i)
                forward.update((i, int(a), float(w)) for a, w in zip(edges, weights))
            backward = set()
            for a in range(h.hyperedge_count):
                nodes, weights = h.hyperedge_incidence(a)
                backward.update((int(i), a, float(w)) for i, w in zip(nodes, weights))
            assert forward == backward

    def test_degree_identity(self):
        for h in random_connected_instances(20, seed=12):
            total = h.node_degree.sum()
            assert total == pytest.approx(h.hyperedge_degree.sum(), rel=1e-12)
            for i in range(h.node_count):
                _, weights = h.node_incidence(i)
                assert h.node_degree[i] == pytest.approx(weights.sum(), rel=1e-12)


class TestComponents:
    def test_worked_example_is_connected(self, worked_example):
        assert hw.connected_components(worked_example) == [[0, 1, 2, 3, 4]]

    def test_two_disjoint_hyperedges(self):
        h = hw.build_hypergraph([[0, 1], [2, 3]])
        assert hw.connected_components(h) == [[0, 1], [2, 3]]

    def test_empty_hypergraph(self):
        h = hw.build_hypergraph([])
        assert hw.connected_components(h) == []

    def test_isolated_node_is_singleton(self):
        h = hw.build_hypergraph([[0, 1]], num_nodes=3)
        assert hw.connected_components(h) == [[0, 1], [2]]

    def test_partition_property(self):
        for h in random_connected_instances(10, seed=13):
            comps = hw.connected_components(h)
            flat = [n for comp in comps for n in comp]
            assert sorted(flat) == list(range(h.node_count))
            assert len(flat) == len(set(flat))


class TestExpansion:
    def test_worked_example_edges(self, worked_example):
        assert hw.expand_to_graph(worked_example) == [
            (0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]

    def test_min_of_two_weights(self):
        h = hw.build_hypergraph([[(0, 3.0), (1, 5.0)]])
        assert hw.expand_to_graph(h) == [(0, 1, 3.0)]

    def test_shared_hyperedges_accumulate(self):
        h = hw.build_hypergraph([[0, 1], [0, 1, 2]])
        edges = dict(((i, j), w) for i, j, w in hw.expand_to_graph(h))
        assert edges[(0, 1)] == 2.0

    def test_relabeling_permutes_edges(self):
        h1 = hw.build_hypergraph([[(0, 1.0), (1, 2.0), (2, 0.5)], [(1, 1.0), (3, 1.0)]])
        # swap labels 0 <-> 3
        h2 = hw.build_hypergraph([[(3, 1.0), (1, 2.0), (2, 0.5)], [(1, 1.0), (0, 1.0)]])
        swap = {0: 3, 1: 1, 2: 2, 3: 0}
        mapped = sorted(
            (min(swap[i], swap[j]), max(swap[i], swap[j]), w)
            for i, j, w in hw.expand_to_graph(h1))
        assert mapped == hw.expand_to_graph(h2)

    def test_empty(self):
        assert hw.expand_to_graph(hw.build_hypergraph([])) == []


class TestPreferentialGenerator:
    def test_deterministic(self):
        a = hw.preferential_attachment(1000, seed=7)
        b = hw.preferential_attachment(1000, seed=7)
        assert np.array_equal(a.edge_indptr, b.edge_indptr)
        assert np.array_equal(a.edge_node_ids, b.edge_node_ids)
        assert np.array_equal(a.edge_node_weights, b.edge_node_weights)

    def test_heavy_tail(self):
        h = hw.preferential_attachment(10_000, seed=1)
        degrees = h.node_degree
        assert degrees.max() > 50 * np.median(degrees)

    def test_two_node_base_case(self):
        h = hw.preferential_attachment(2, seed=0)
        assert h.hyperedge_count == 1
        nodes, _ = h.hyperedge_incidence(0)
        assert nodes.tolist() == [0, 1]

    def test_connected_and_sized(self):
        h = hw.preferential_attachment(500, seed=5)
        assert h.node_count == 500
        assert len(hw.connected_components(h)) == 1

    def test_invalid_params(self):
        with pytest.raises(hw.InvalidParams):
            hw.preferential_attachment(1, seed=0)
        with pytest.raises(hw.InvalidParams):
            hw.preferential_attachment(10, seed=0, min_size=1)
        with pytest.raises(hw.InvalidParams):
            hw.preferential_attachment(10, seed=0, weight_tail=0.0)


class TestSubhypergraph:
    def test_component_restriction(self):
        h = hw.build_hypergraph([[0, 1], [2, 3, 4], [3, 4]])
        sub, old_ids = hw.subhypergraph(h, [2, 3, 4])
        assert old_ids.tolist() == [2, 3, 4]
        assert sub.node_count == 3
        assert sub.hyperedge_count == 2
        np.testing.assert_allclose(sub.node_degree, h.node_degree[2:])
