import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnicolor.extensions import (
    RandomizedParams,
    TradeoffParams,
    draw_class,
    random_defect_bound,
    random_palette_size,
    randomized_color,
    randomized_defective,
    tradeoff_color,
)
from bnicolor.generators import complete_bipartite, complete_graph, random_gnd
from bnicolor.graph import build_line_graph
from bnicolor.params import ParamError
from bnicolor.verify import check_vertex_coloring


class TestFormulas:
    def test_palette_size(self):
        assert random_palette_size(128, 4096) == math.ceil(128 / math.log(4096))
        assert random_palette_size(100, 3) == math.ceil(100 / math.log(3))

    def test_defect_bound(self):
        assert random_defect_bound(2.0, 4096) == math.ceil(2 * math.e * math.log(4096))

    def test_param_validation(self):
        with pytest.raises(ParamError):
            RandomizedParams(kappa=1.0).validate()
        with pytest.raises(ParamError):
            RandomizedParams(eta=0.0).validate()
        RandomizedParams().validate()

    def test_tradeoff_validation(self):
        with pytest.raises(ParamError):
            TradeoffParams("power:0.5", eta=1.0).validate(64)
        with pytest.raises(ParamError):
            TradeoffParams("const:0.5", eta=0.25).validate(64)  # g < 1
        with pytest.raises(ParamError):
            TradeoffParams("warp", eta=0.25).validate(64)
        TradeoffParams("log", eta=0.25).validate(64)


class TestDrawClass:
    @given(st.integers(0, 1000), st.integers(1, 5000), st.integers(1, 40))
    @settings(max_examples=60, deadline=None)
    def test_range_and_determinism(self, seed, vid, p):
        k = draw_class(seed, vid, p)
        assert 1 <= k <= p
        assert draw_class(seed, vid, p) == k

    def test_varies_with_key(self):
        draws = {draw_class(0, vid, 1000) for vid in range(1, 50)}
        assert len(draws) > 20


class TestRandomizedDefective:
    def test_reproducible_and_shaped(self):
        g = random_gnd(256, 48, seed=1)
        params = RandomizedParams(seed=11)
        a = randomized_defective(g, params)
        b = randomized_defective(g, params)
        assert a == b
        assert a.palette == random_palette_size(g.delta, g.n)
        assert a.claimed_defect == random_defect_bound(2.0, g.n)

    def test_rejects_low_degree(self):
        g = random_gnd(100, 3, seed=0)
        with pytest.raises(ParamError):
            randomized_defective(g, RandomizedParams())


class TestRandomizedColor:
    def test_legal_and_palette_claim(self):
        g = random_gnd(300, 24, seed=2)
        col, report = randomized_color(g, RandomizedParams(seed=5))
        assert check_vertex_coloring(g, col).legal
        p = report.extra["class_palette"]
        B = report.extra["class_degree_bound"]
        assert col.palette == p * (B + 1)
        if not report.flags:
            assert report.extra["max_class_degree"] <= B

    def test_seed_changes_output(self):
        g = random_gnd(300, 24, seed=2)
        a, _ = randomized_color(g, RandomizedParams(seed=5))
        b, _ = randomized_color(g, RandomizedParams(seed=6))
        assert a != b

    def test_rejects_unsound_inner_lambda(self):
        from bnicolor.params import LegalParams

        g = random_gnd(300, 24, seed=2)
        with pytest.raises(ParamError):
            randomized_color(g, RandomizedParams(seed=5), legal_params=LegalParams(1, 9, 5, 1))


class TestTradeoff:
    def test_line_graph_legal(self):
        g = build_line_graph(complete_bipartite(9, 9)).lg
        col, report = tradeoff_color(g, TradeoffParams("power:0.5", eta=0.25), c=2)
        assert check_vertex_coloring(g, col).legal
        assert max(col.colors.values()) <= col.palette

    def test_fallback_when_g_dominates(self):
        g = build_line_graph(complete_bipartite(5, 5)).lg
        col, report = tradeoff_color(g, TradeoffParams("power:1", eta=0.5), c=2)
        assert report.extra.get("fallback") == "legal_color"
        assert check_vertex_coloring(g, col).legal

    def test_deterministic(self):
        g = build_line_graph(complete_graph(7)).lg
        params = TradeoffParams("power:0.5", eta=0.25)
        a, _ = tradeoff_color(g, params, c=2, seed=1)
        b, _ = tradeoff_color(g, params, c=2, seed=1)
        assert a == b

    def test_rejects_bad_c(self):
        with pytest.raises(ParamError):
            tradeoff_color(complete_graph(4), TradeoffParams("log", 0.25), c=0)
