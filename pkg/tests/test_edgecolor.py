import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnicolor.edgecolor import (
    edge_color_2delta_minus_1,
    edge_color_direct,
    edge_color_via_line_graph,
    smallest_pprime,
)
from bnicolor.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    random_gnd,
)
from bnicolor.params import LegalParams, ParamError
from bnicolor.verify import check_edge_coloring

from conftest import small_graphs


class TestSmallestPprime:
    def test_values(self):
        assert smallest_pprime(64, 3) == 32
        assert smallest_pprime(64, 0) == 64
        assert smallest_pprime(10, 4) == 4

    @given(st.integers(1, 200), st.integers(0, 30))
    @settings(max_examples=60, deadline=None)
    def test_bound_holds_and_minimal(self, Lambda, d):
        pp = smallest_pprime(Lambda, d)
        assert 2 * (-(-Lambda // pp)) - 2 <= d
        if pp > 1:
            assert 2 * (-(-Lambda // (pp - 1))) - 2 > d

    def test_rejects_negative(self):
        with pytest.raises(ParamError):
            smallest_pprime(10, -1)


class TestBottomOnly:
    @pytest.mark.parametrize(
        "maker,colors,palette",
        [
            (lambda: complete_bipartite(1, 5), 5, 9),
            (lambda: cycle_graph(7), 3, 3),
            (lambda: complete_graph(5), 7, 7),
        ],
    )
    def test_frozen_oracles(self, maker, colors, palette):
        g = maker()
        col, report = edge_color_2delta_minus_1(g)
        assert check_edge_coloring(g, col).legal
        assert col.colors_used() == colors
        assert col.palette == palette
        assert max(col.colors.values()) <= 2 * g.delta - 1

    def test_petersen(self, petersen):
        col, _ = edge_color_2delta_minus_1(petersen)
        assert check_edge_coloring(petersen, col).legal
        assert col.colors_used() == 4
        assert max(col.colors.values()) <= 5

    def test_empty_graph(self):
        col, report = edge_color_2delta_minus_1(path_graph(1))
        assert col.colors == {} and report.rounds == 0

    @given(small_graphs(max_n=9))
    @settings(max_examples=20, deadline=None)
    def test_legal_within_2delta_minus_1(self, g):
        col, _ = edge_color_2delta_minus_1(g)
        assert check_edge_coloring(g, col).legal
        if g.m:
            assert max(col.colors.values()) <= 2 * g.delta - 1


class TestEdgeDirect:
    def test_star_worked_instance(self):
        # Lambda0 = 2*(33-1) = 64 with (b=2, p=9, lam=8) recurses [64,23,9,5]
        g = complete_bipartite(1, 33)
        params = LegalParams(2, 9, 8, 2, for_edges=True)
        col, report = edge_color_direct(g, params, msg_mode="wide")
        assert check_edge_coloring(g, col).legal
        assert col.palette == 4374
        assert report.extra["vartheta"] == 4374
        assert report.extra["level_lambdas"] == [64, 23, 9, 5]

    @pytest.mark.parametrize("seed", [0, 1])
    def test_random_graphs_legal(self, seed):
        g = random_gnd(30, 8, seed=seed)
        params = LegalParams(1, 9, 16, 2, for_edges=True)
        col, report = edge_color_direct(g, params, msg_mode="short")
        assert check_edge_coloring(g, col).legal
        assert max(col.colors.values()) <= col.palette

    def test_paced_mode_legal(self):
        g = random_gnd(24, 8, seed=3)
        params = LegalParams(1, 9, 16, 2, for_edges=True)
        col, report = edge_color_direct(g, params, msg_mode="short", paced=True)
        assert check_edge_coloring(g, col).legal

    def test_budget_factor_silences_flags(self):
        g = complete_bipartite(1, 32)
        params = LegalParams(1, 9, 36, 2, for_edges=True)
        _, noisy = edge_color_direct(g, params, msg_mode="short", budget_factor=1)
        _, quiet = edge_color_direct(g, params, msg_mode="short", budget_factor=4)
        assert quiet.extra["budget_violations"] <= noisy.extra["budget_violations"]
        assert quiet.extra["budget_violations"] == 0

    def test_deterministic(self):
        g = random_gnd(20, 6, seed=7)
        params = LegalParams(1, 9, 16, 2, for_edges=True)
        a, _ = edge_color_direct(g, params)
        b_, _ = edge_color_direct(g, params)
        assert a == b_


class TestEdgeViaLineGraph:
    def test_matches_host_bound(self):
        g = random_gnd(20, 6, seed=1)
        params = LegalParams(1, 9, 16, 2)
        col, report = edge_color_via_line_graph(g, params)
        assert check_edge_coloring(g, col).legal
        assert report.rounds == 2 * report.extra["logical_rounds"] + 2

    def test_palette_within_vartheta(self):
        g = random_gnd(24, 6, seed=2)
        params = LegalParams(1, 9, 16, 2)
        col, report = edge_color_via_line_graph(g, params)
        assert max(col.colors.values()) <= report.extra["vartheta"]
