import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnicolor.generators import clique_pendant, complete_graph, generate, random_gnd
from bnicolor.graph import build_line_graph
from bnicolor.legal import (
    defective_color,
    improved_legal_color,
    legal_color,
)
from bnicolor.params import (
    DefectiveParams,
    LegalParams,
    ParamError,
    defect_bound,
    recursion_schedule,
    vartheta_of_schedule,
)
from bnicolor.verify import check_defect_pigeonhole, check_vertex_coloring


def line_graph_of_random(n, d, seed):
    return build_line_graph(random_gnd(n, d, seed=seed)).lg


class TestDefectiveColor:
    @pytest.mark.parametrize("phi_mode", ["fast", "simple"])
    @pytest.mark.parametrize("b,p", [(1, 4), (2, 4), (1, 8)])
    def test_defect_within_bound(self, phi_mode, b, p):
        g = line_graph_of_random(20, 6, seed=5)
        params = DefectiveParams(b, p, g.delta, 2)
        psi, report = defective_color(g, params, phi_mode=phi_mode)
        rep = check_vertex_coloring(g, psi)
        assert rep.measured_defect <= defect_bound(params)
        assert max(psi.colors.values()) <= p

    def test_loop_rounds_within_phi_palette(self):
        g = line_graph_of_random(16, 5, seed=2)
        params = DefectiveParams(1, 4, g.delta, 2)
        _, report = defective_color(g, params)
        assert report.extra["loop_rounds"] <= report.extra["phi_palette"]

    def test_pigeonhole_lemma(self):
        g = line_graph_of_random(18, 5, seed=3)
        params = DefectiveParams(1, 4, g.delta, 2)
        psi, report = defective_color(g, params)
        from bnicolor.coloring import VertexColoring

        phi = VertexColoring(report.extra["phi_colors"], report.extra["phi_palette"], g.delta)
        rep = check_defect_pigeonhole(g, phi, psi, p=4, Lambda=g.delta)
        assert not rep.violated

    def test_rejects_lambda_below_delta(self):
        g = complete_graph(6)
        with pytest.raises(ParamError):
            defective_color(g, DefectiveParams(1, 2, 4, 1))

    def test_deterministic(self):
        g = line_graph_of_random(16, 5, seed=9)
        params = DefectiveParams(1, 4, g.delta, 2)
        a, _ = defective_color(g, params)
        b_, _ = defective_color(g, params)
        assert a == b_


class TestLegalColor:
    @pytest.mark.parametrize("phi_mode", ["fast", "simple", "improved"])
    def test_legal_and_within_vartheta(self, phi_mode):
        g = line_graph_of_random(24, 8, seed=1)
        params = LegalParams(1, 9, 12, 2)
        result, report = legal_color(g, params, phi_mode=phi_mode)
        assert check_vertex_coloring(g, result.phi).legal
        assert max(result.phi.colors.values()) <= result.vartheta

    def test_vartheta_matches_independent_recursion(self):
        g = line_graph_of_random(24, 8, seed=1)
        params = LegalParams(1, 9, 12, 2)
        result, _ = legal_color(g, params)
        sched = recursion_schedule(params, g.delta)
        assert result.vartheta == vartheta_of_schedule(sched, params.p)
        assert result.level_lambdas == sched

    def test_trivial_degree_runs_bottom_only(self):
        g = random_gnd(20, 3, seed=0)
        params = LegalParams(1, 9, 36, 2)
        result, _ = legal_color(g, params)
        assert result.depth == 0
        assert check_vertex_coloring(g, result.phi).legal

    def test_improved_equals_wrapper(self):
        g = line_graph_of_random(18, 6, seed=4)
        params = LegalParams(1, 9, 12, 2)
        a, _ = improved_legal_color(g, params)
        b_, _ = legal_color(g, params, phi_mode="improved")
        assert a.phi == b_.phi

    def test_clique_pendant_family(self):
        g = clique_pendant(24)
        params = LegalParams(1, 9, 12, 2)
        result, _ = legal_color(g, params)
        assert check_vertex_coloring(g, result.phi).legal

    def test_unknown_phi_mode(self):
        with pytest.raises(ParamError):
            legal_color(complete_graph(4), LegalParams(1, 9, 12, 2), phi_mode="warp")
