import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magnetic_eigenmaps.exceptions import GraphError, NotConnectedError, SelfLoopError
from magnetic_eigenmaps.graph import (
    DirectedGraph,
    connected_components,
    is_connected,
    spanning_tree,
    symmetrize,
    tree_path,
)

from conftest import structural_suite


def arcs_strategy(max_n=12):
    return st.integers(2, max_n).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
                min_size=1,
                max_size=3 * n,
            ),
        )
    )


class TestSymmetrize:
    def test_single_edge(self, single_edge):
        sym = symmetrize(single_edge)
        assert sym.wbar.tolist() == [0.5]
        assert sym.flow.tolist() == [1]
        assert sym.degrees.tolist() == [0.5, 0.5]
        assert sym.volume == 1.0

    def test_reciprocal_pair(self):
        sym = symmetrize(DirectedGraph.from_edges([(0, 1), (1, 0)]))
        assert sym.wbar.tolist() == [1.0]
        assert sym.flow.tolist() == [0]

    def test_cycle3(self, cycle3):
        sym = symmetrize(cycle3)
        assert sym.degrees.tolist() == [1.0, 1.0, 1.0]
        assert sym.volume == 3.0
        assert sym.flow_between(2, 0) == 1
        assert sym.flow_between(0, 2) == -1

    @given(arcs_strategy())
    @settings(max_examples=80, deadline=None)
    def test_invariants(self, data):
        n, arcs = data
        g = DirectedGraph.from_edges(arcs, n=n)
        sym = symmetrize(g)
        W = g.adjacency().toarray()
        Wbar = sym.weight_matrix().toarray()
        A = sym.flow_matrix().toarray()
        np.testing.assert_array_equal(Wbar, (W + W.T) / 2)
        np.testing.assert_array_equal(A, W - W.T)
        np.testing.assert_array_equal(A, -A.T)
        assert set(np.unique(Wbar[Wbar > 0])) <= {0.5, 1.0}
        assert abs(sym.volume - 2 * sym.wbar.sum()) <= 1e-12
        np.testing.assert_allclose(sym.degrees, Wbar.sum(axis=1), atol=1e-12)


class TestDirectedGraph:
    def test_duplicates_collapse(self):
        g = DirectedGraph.from_edges([(0, 1), (0, 1), (1, 0)])
        assert g.n_edges == 1
        assert len(g.arcs()) == 2

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            DirectedGraph.from_edges([(1, 1)])

    def test_bad_id_count(self):
        with pytest.raises(GraphError):
            DirectedGraph.from_edges([(0, 1)], ids=["a"])

    def test_from_adjacency_roundtrip(self):
        W = np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
        g = DirectedGraph.from_adjacency(W)
        np.testing.assert_array_equal(g.adjacency().toarray(), W)

    def test_subgraph(self, cycle3):
        sub = cycle3.subgraph([2, 0])
        assert sub.ids == ("2", "0")
        assert sub.arcs().tolist() == [[0, 1]]

    def test_immutable(self, cycle3):
        with pytest.raises(ValueError):
            cycle3.pairs[0, 0] = 5


class TestConnectivity:
    def test_cycle(self, cycle3):
        assert is_connected(cycle3)

    def test_two_isolated_edges(self):
        g = DirectedGraph.from_edges([(0, 1), (2, 3)])
        assert not is_connected(g)
        assert [c.tolist() for c in connected_components(g)] == [[0, 1], [2, 3]]

    def test_single_node(self):
        assert is_connected(DirectedGraph.from_edges([], n=1))


class TestSpanningTree:
    def test_cycle3(self, cycle3):
        t = spanning_tree(cycle3)
        assert len(t.tree_edges) == 2 and t.beta1 == 1
        assert t.cotree_pairs().tolist() == [[1, 2]]

    def test_path(self, path3):
        t = spanning_tree(path3)
        assert len(t.tree_edges) == 2 and t.beta1 == 0

    def test_k4(self):
        g = DirectedGraph.from_edges([(i, j) for i in range(4) for j in range(4) if i != j])
        assert spanning_tree(g).beta1 == 3

    def test_not_connected(self):
        with pytest.raises(NotConnectedError):
            spanning_tree(DirectedGraph.from_edges([(0, 1), (2, 3)]))

    def test_betti_and_determinism(self):
        for g in structural_suite(10):
            t1, t2 = spanning_tree(g), spanning_tree(g)
            assert t1.beta1 == g.n_edges - g.n + 1
            np.testing.assert_array_equal(t1.tree_edges, t2.tree_edges)
            # tree edges connect every node without a cycle
            tree_graph = DirectedGraph.from_edges(map(tuple, t1.tree_pairs().tolist()), n=g.n)
            assert is_connected(tree_graph) and tree_graph.n_edges == g.n - 1


class TestTreePath:
    def test_path(self, path3):
        t = spanning_tree(path3)
        assert tree_path(t, 0, 2) == [(0, 1), (1, 2)]
        assert tree_path(t, 2, 0) == [(2, 1), (1, 0)]

    def test_identity(self, path3):
        assert tree_path(spanning_tree(path3), 1, 1) == []

    def test_star(self):
        star = DirectedGraph.from_edges([(0, 1), (0, 2), (0, 3)])
        assert tree_path(spanning_tree(star), 1, 2) == [(1, 0), (0, 2)]

    def test_path_is_walk(self):
        g = structural_suite(1)[0]
        t = spanning_tree(g)
        rng = np.random.default_rng(1)
        tree_pairs = {tuple(p) for p in t.tree_pairs().tolist()}
        for _ in range(20):
            s, d = rng.integers(g.n, size=2)
            path = tree_path(t, int(s), int(d))
            if path:
                assert path[0][0] == s and path[-1][1] == d
            for (a, b), (c, _) in zip(path, path[1:]):
                assert b == c
            assert all(tuple(sorted(e)) in tree_pairs for e in path)
