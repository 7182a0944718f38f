import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnicolor.graph import (
    Graph,
    GraphError,
    ball,
    build_line_graph,
    format_edge_list,
    graph_from_edges,
    independence_at_most,
    induced_subgraph,
    neighborhood_independence,
    orient_by_color_then_id,
    parse_edge_list,
)
from bnicolor.generators import clique_pendant, complete_graph, cycle_graph

from conftest import small_graphs


class TestGraphCore:
    def test_basic_properties(self):
        g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4)])
        assert g.n == 4 and g.m == 3 and g.delta == 2
        assert g.neighbors(2) == (1, 3)
        assert g.has_edge(1, 2) and not g.has_edge(1, 3)
        assert g.edges() == [(1, 2), (2, 3), (3, 4)]

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            graph_from_edges(2, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(GraphError):
            graph_from_edges(2, [(1, 2), (2, 1)])

    def test_rejects_nonpositive_ids(self):
        with pytest.raises(GraphError):
            Graph([0, 1], [])

    def test_induced_subgraph_keeps_ids(self):
        g = complete_graph(5)
        h = induced_subgraph(g, {2, 4, 5})
        assert h.vertices == (2, 4, 5)
        assert h.m == 3

    def test_ball_radius(self):
        g = graph_from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
        assert set(ball(g, 1, 2).vertices) == {1, 2, 3}
        assert set(ball(g, 3, 1).vertices) == {2, 3, 4}


class TestEdgeListFormat:
    def test_roundtrip(self):
        g = complete_graph(4)
        assert parse_edge_list(format_edge_list(g)) == g

    @pytest.mark.parametrize(
        "text",
        ["", "3\n", "2 1\n2 1", "2 2\n1 2", "3 1\n3 1"],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises((GraphError, ValueError)):
            parse_edge_list(text)

    @given(small_graphs())
    @settings(max_examples=30, deadline=None)
    def test_roundtrip_property(self, g):
        assert parse_edge_list(format_edge_list(g)) == g


class TestLineGraph:
    def test_line_of_k4(self):
        lgm = build_line_graph(complete_graph(4))
        assert lgm.lg.n == 6
        assert lgm.lg.delta == 4
        assert lgm.edge_of[1] == (1, 2)
        assert lgm.vertex_of[(1, 2)] == 1

    def test_line_of_path(self):
        lgm = build_line_graph(graph_from_edges(4, [(1, 2), (2, 3), (3, 4)]))
        assert lgm.lg.edges() == [(1, 2), (2, 3)]

    @given(small_graphs(max_n=8))
    @settings(max_examples=40, deadline=None)
    def test_line_graph_degree_bound(self, g):
        # an edge (u,w) meets at most (deg u - 1) + (deg w - 1) other edges
        lg = build_line_graph(g).lg
        if g.delta >= 1:
            assert lg.delta <= 2 * (g.delta - 1)

    @given(small_graphs(max_n=8))
    @settings(max_examples=40, deadline=None)
    def test_line_graph_independence_at_most_2(self, g):
        lg = build_line_graph(g).lg
        if lg.n:
            assert independence_at_most(lg, 2)


class TestIndependence:
    def test_known_values(self, petersen):
        assert neighborhood_independence(petersen) == 3
        assert neighborhood_independence(complete_graph(5)) == 1
        assert neighborhood_independence(cycle_graph(5)) == 2
        assert neighborhood_independence(clique_pendant(8)) == 2
        star = graph_from_edges(6, [(1, k) for k in range(2, 7)])
        assert neighborhood_independence(star) == 5

    def test_edgeless_is_zero(self):
        assert neighborhood_independence(graph_from_edges(3, [])) == 0

    @given(small_graphs(max_n=8))
    @settings(max_examples=40, deadline=None)
    def test_threshold_consistency(self, g):
        i = neighborhood_independence(g)
        assert independence_at_most(g, i)
        if i > 0:
            assert not independence_at_most(g, i - 1)

    @given(small_graphs(min_n=2, max_n=7), st.integers(0, 2**16))
    @settings(max_examples=30, deadline=None)
    def test_monotone_under_induced_subgraphs(self, g, seed):
        import random

        if g.m == 0:
            return
        sub = random.Random(seed).sample(g.vertices, max(2, g.n // 2))
        h = induced_subgraph(g, sub)
        if h.m == 0:
            return
        assert neighborhood_independence(h) <= neighborhood_independence(g)


class TestOrientation:
    @given(small_graphs(max_n=9), st.integers(1, 5))
    @settings(max_examples=40, deadline=None)
    def test_color_orientation_acyclic(self, g, palette):
        colors = {v: 1 + (v * 7) % palette for v in g.vertices}
        o = orient_by_color_then_id(g, colors)
        assert o.is_acyclic()
        order = o.topological_order()
        pos = {v: i for i, v in enumerate(order)}
        for (u, w), head in o.direction.items():
            tail = u if head == w else w
            assert pos[head] < pos[tail]

    def test_cycle_detected(self):
        g = cycle_graph(3)
        from bnicolor.graph import Orientation

        o = Orientation(g, {(1, 2): 2, (2, 3): 3, (1, 3): 1})
        assert not o.is_acyclic()
        with pytest.raises(GraphError):
            o.topological_order()

    def test_missing_color_rejected(self):
        g = cycle_graph(3)
        with pytest.raises(GraphError):
            orient_by_color_then_id(g, {1: 1, 2: 2})
