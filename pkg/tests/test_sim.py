import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnicolor.generators import complete_graph, cycle_graph, path_graph
from bnicolor.graph import graph_from_edges
from bnicolor.sim import (
    Context,
    DeadlockError,
    LocalityViolation,
    Message,
    SimError,
    VertexProgram,
    run,
    run_on_line_graph,
)

from conftest import small_graphs


class Silent(VertexProgram):
    def step(self, round_no, inbox):
        self.output = self.ctx.vid
        return {}


class ChattyFor(VertexProgram):
    """Broadcasts for T rounds, then halts; duration is exactly T."""

    def step(self, round_no, inbox):
        T = self.ctx.params["T"]
        if not self.ctx.neighbors:
            self.output = round_no
            return {}
        if round_no > T:
            self.output = round_no
            return {}
        if round_no == T:
            self.output = round_no
        return {u: Message((0, 2)) for u in self.ctx.neighbors}


class Sleeper(VertexProgram):
    def step(self, round_no, inbox):
        if round_no == 1:
            self.wake = self.ctx.params["at"]
            return {}
        self.output = round_no
        return {u: Message((0, 2)) for u in self.ctx.neighbors}


class Rude(VertexProgram):
    def step(self, round_no, inbox):
        return {self.ctx.vid % self.ctx.n + 1: Message((0, 2))}


class Stuck(VertexProgram):
    def step(self, round_no, inbox):
        return {}


class Fat(VertexProgram):
    def step(self, round_no, inbox):
        self.output = 1
        return {u: Message((0, 2**40)) for u in self.ctx.neighbors}


class TestMessage:
    def test_bit_accounting(self):
        assert Message((0, 2)).bits == 1
        assert Message((3, 8), (0, 3)).bits == 3 + 2
        assert Message((5, 1024)).bits == 10

    def test_rejects_out_of_domain(self):
        with pytest.raises(ValueError):
            Message((2, 2))
        with pytest.raises(ValueError):
            Message((-1, 4))


class TestEngine:
    def test_silent_program_zero_rounds(self):
        report = run(cycle_graph(5), Silent)
        assert report.rounds == 0
        assert report.outputs == {v: v for v in range(1, 6)}

    @pytest.mark.parametrize("T", [1, 3, 7])
    def test_rounds_counts_last_send(self, T):
        report = run(cycle_graph(4), ChattyFor, params={"T": T})
        assert report.rounds == T

    def test_wake_skips_idle_rounds(self):
        report = run(path_graph(3), Sleeper, params={"at": 9})
        assert report.rounds == 9

    def test_locality_violation(self):
        with pytest.raises(LocalityViolation):
            run(path_graph(4), Rude)

    def test_deadlock_detected(self):
        with pytest.raises(DeadlockError):
            run(path_graph(2), Stuck)

    def test_short_mode_flags_oversized(self):
        report = run(path_graph(3), Fat, msg_mode="short")
        assert report.flags and "exceeds budget" in report.flags[0]
        # one violation per (sender, receiver) pair on the path 1-2-3
        assert report.extra["budget_violations"] == 4

    def test_wide_mode_never_flags_size(self):
        report = run(path_graph(3), Fat, msg_mode="wide")
        assert not report.flags
        assert report.max_msg_bits == 40

    def test_short_mode_rejects_multiplexing(self):
        class Multi(VertexProgram):
            def step(self, round_no, inbox):
                self.output = 1
                return {u: [Message((0, 2)), Message((0, 2))] for u in self.ctx.neighbors}

        with pytest.raises(SimError):
            run(path_graph(2), Multi, msg_mode="short")

    def test_round_cap(self):
        from bnicolor.sim import RoundCapExceeded

        with pytest.raises(RoundCapExceeded) as exc:
            run(cycle_graph(3), ChattyFor, params={"T": 100}, round_cap=10)
        assert exc.value.partial is not None

    @given(small_graphs(max_n=8), st.integers(1, 5))
    @settings(max_examples=25, deadline=None)
    def test_outputs_total_and_deterministic(self, g, T):
        r1 = run(g, ChattyFor, params={"T": T})
        r2 = run(g, ChattyFor, params={"T": T})
        assert set(r1.outputs) == set(g.vertices)
        assert r1.outputs == r2.outputs and r1.rounds == r2.rounds


class EchoBall(VertexProgram):
    """After r rounds of flooding, a vertex knows exactly its radius-r ball."""

    def __init__(self, ctx: Context):
        super().__init__(ctx)
        self.known = {ctx.vid}

    def step(self, round_no, inbox):
        for _, msg in inbox:
            self.known.add(msg.fields[0][0] + 1)
        if not self.ctx.neighbors or round_no > self.ctx.params["r"]:
            self.output = sorted(self.known)
            return {}
        return {
            u: [Message((w - 1, self.ctx.n)) for w in sorted(self.known)]
            for u in self.ctx.neighbors
        }


class TestLocality:
    @given(small_graphs(min_n=2, max_n=8), st.integers(0, 3))
    @settings(max_examples=25, deadline=None)
    def test_information_confined_to_ball(self, g, r):
        from bnicolor.graph import ball

        report = run(g, EchoBall, params={"r": r})
        for v in g.vertices:
            assert report.outputs[v] == sorted(ball(g, v, r).vertices)


class TestLineGraphHost:
    @pytest.mark.parametrize("T", [0, 1, 5, 20])
    def test_host_rounds_bound(self, T):
        g = complete_graph(5)
        if T == 0:
            report = run_on_line_graph(g, Silent)
        else:
            report = run_on_line_graph(g, ChattyFor, params={"T": T})
        assert report.rounds == 2 * T + 2
        assert report.rounds <= 2 * T + 2

    def test_outputs_keyed_by_edge_rank(self):
        g = path_graph(3)
        report = run_on_line_graph(g, Silent)
        assert set(report.outputs) == {1, 2}

    def test_setup_flag_recorded(self):
        report = run_on_line_graph(path_graph(3), Silent)
        assert any("setup" in f for f in report.flags)
