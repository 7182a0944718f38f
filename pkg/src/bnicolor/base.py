"""Base coloring subroutines as vertex programs.

These implement the prior-work contracts the recursive algorithms build on:
an iterated polynomial log*-time coloring, the one-class-per-round palette
reduction, the single-shot defective recoloring from a legal coloring, and the
two-round defective edge labeling.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .coloring import EdgeColoring, VertexColoring
from .graph import Graph
from .numbers import (
    PolyPlan,
    kuhn_step_plan,
    linial_schedule,
    poly_coeffs,
    poly_eval,
)
from .sim import Context, Message, SimReport, VertexProgram, run
from .verify import check_vertex_coloring

# recorded implementation constants (measured; asserted stable by the tests)
C_LIN = 9  # linial palette <= C_LIN * delta^2 (delta >= 1)
C_KUHN = 16  # kuhn palette <= C_KUHN * (delta/d)^2 over the tested sweeps


def choose_point(
    own_color: int, nbr_colors: List[int], plan: PolyPlan
) -> Tuple[int, int]:
    """Evaluation point minimizing polynomial agreements with the neighbors.

    Returns (x, number of agreements); ties broken toward smaller x. With
    q > k*|nbrs| the minimum is 0 and the step preserves legality.
    """
    k, q = plan.k, plan.q
    own = poly_coeffs(own_color, k, q)
    counts = [0] * q
    for col in nbr_colors:
        other = poly_coeffs(col, k, q)
        if other == own:
            # identical colors agree everywhere; count once per point
            for x in range(q):
                counts[x] += 1
            continue
        diff = [(a - b) % q for a, b in zip(own, other)]
        # agreement points = roots of the difference polynomial (<= k of them)
        for x in range(q):
            if poly_eval(diff, x, q) == 0:
                counts[x] += 1
    best_x = min(range(q), key=lambda x: (counts[x], x))
    return best_x, counts[best_x]


def step_color(own_color: int, x: int, plan: PolyPlan) -> int:
    value = poly_eval(poly_coeffs(own_color, plan.k, plan.q), x, plan.q)
    return x * plan.q + value + 1


class LinialProgram(VertexProgram):
    """Iterated polynomial palette reduction; one round per iteration."""

    def __init__(self, ctx: Context):
        super().__init__(ctx)
        self.plans: List[PolyPlan] = ctx.params["plans"]
        self.cur = ctx.vid
        self.j = 0  # completed iterations
        self.nbr: Dict[int, Dict[int, int]] = {u: {0: u} for u in ctx.neighbors}

    def step(self, round_no, inbox):
        for u, msg in inbox:
            it, col = msg.fields[0][0], msg.fields[1][0]
            self.nbr[u][it] = col
        out = {}
        while self.j < len(self.plans) and all(
            self.j in self.nbr[u] for u in self.ctx.neighbors
        ):
            plan = self.plans[self.j]
            x, _ = choose_point(
                self.cur, [self.nbr[u][self.j] for u in self.ctx.neighbors], plan
            )
            self.cur = step_color(self.cur, x, plan)
            self.j += 1
            msg = Message((self.j, len(self.plans) + 1), (self.cur - 1, plan.palette))
            for u in self.ctx.neighbors:
                out.setdefault(u, []).append(msg)
        if self.j == len(self.plans):
            self.output = self.cur
        return out


def linial_coloring(g: Graph, delta_bound: Optional[int] = None) -> Tuple[VertexColoring, SimReport]:
    """Legal coloring with palette <= C_LIN * delta^2, in O(log* n) rounds."""
    if g.n == 0:
        return VertexColoring({}, 1, 0), SimReport(0, 0, 0, {})
    bound = delta_bound if delta_bound is not None else g.delta
    plans = linial_schedule(g.id_bound, max(bound, 1))
    palette = plans[-1].palette if plans else g.id_bound
    report = run(g, LinialProgram, msg_mode="wide", params={"plans": plans})
    col = VertexColoring(dict(report.outputs), max(palette, 1), 0)
    report.extra["palette"] = col.palette
    return col, report


class ReduceProgram(VertexProgram):
    """One color class recolors per round, highest class first."""

    def __init__(self, ctx: Context):
        super().__init__(ctx)
        self.start = ctx.params["start"][ctx.vid]
        self.p0 = ctx.params["p0"]
        self.target = ctx.params["target"]
        self.cur = self.start
        self.nbr: Dict[int, int] = {}

    def step(self, round_no, inbox):
        for u, msg in inbox:
            self.nbr[u] = msg.fields[0][0]
        if round_no == 1:
            if not self.ctx.neighbors:
                self.cur = self.start if self.start <= self.target else 1
                self.output = self.cur
                return {}
            if self.start > self.target:
                self.wake = 2 + (self.p0 - self.start)
            else:
                self.output = self.cur
            msg = Message((self.cur, self.p0 + 1))
            return {u: msg for u in self.ctx.neighbors}
        act_round = 2 + (self.p0 - self.start)
        if self.start > self.target and round_no == act_round:
            used = set(self.nbr.values())
            k = 1
            while k in used:
                k += 1
            self.cur = k
            self.output = self.cur
            msg = Message((self.cur, self.target + 1))
            return {u: msg for u in self.ctx.neighbors}
        return {}


def reduce_to_delta_plus_one(
    g: Graph, start: VertexColoring
) -> Tuple[VertexColoring, SimReport]:
    """Legal (delta+1)-coloring from any legal coloring; palette(start) rounds."""
    rep = check_vertex_coloring(g, start)
    if not rep.legal:
        raise ValueError("reduce_to_delta_plus_one requires a legal start coloring")
    p0 = max(start.palette, max(start.colors.values(), default=1))
    target = g.delta + 1
    if p0 <= target:
        report = SimReport(0, 0, 0, dict(start.colors))
        return VertexColoring(dict(start.colors), target, 0), report
    report = run(
        g,
        ReduceProgram,
        msg_mode="wide",
        params={"start": start.colors, "p0": p0, "target": target},
    )
    return VertexColoring(dict(report.outputs), target, 0), report


class KuhnVertexProgram(VertexProgram):
    """Single-shot defective recoloring: exchange legal colors, then each vertex
    picks the evaluation point with fewest polynomial agreements."""

    def __init__(self, ctx: Context):
        super().__init__(ctx)
        self.rho = ctx.params["rho"][ctx.vid]
        self.plan: PolyPlan = ctx.params["plan"]

    def step(self, round_no, inbox):
        if round_no == 1:
            if not self.ctx.neighbors:
                self.output = step_color(self.rho, 0, self.plan)
                return {}
            msg = Message((self.rho - 1, self.plan.n_colors))
            return {u: msg for u in self.ctx.neighbors}
        nbr_rho = [msg.fields[0][0] + 1 for _, msg in inbox]
        x, _ = choose_point(self.rho, nbr_rho, self.plan)
        self.output = step_color(self.rho, x, self.plan)
        return {}


def kuhn_defective_vertex(
    g: Graph, rho: VertexColoring, d: int
) -> Tuple[VertexColoring, SimReport]:
    """d-defective coloring with palette <= C_KUHN*(delta/d)^2 from a legal rho."""
    if d < 1:
        raise ValueError("defect target d must be >= 1")
    rep = check_vertex_coloring(g, rho)
    if not rep.legal:
        raise ValueError("kuhn_defective_vertex requires a legal rho")
    if d >= g.delta:
        col = VertexColoring({v: 1 for v in g.vertices}, 1, min(d, g.delta))
        return col, SimReport(0, 0, 0, dict(col.colors))
    M = max(rho.palette, max(rho.colors.values(), default=1))
    plan = kuhn_step_plan(M, g.delta, d)
    report = run(g, KuhnVertexProgram, msg_mode="wide", params={"rho": rho.colors, "plan": plan})
    claimed = min(d, plan.k * g.delta // plan.q)
    col = VertexColoring(dict(report.outputs), plan.palette, claimed)
    report.extra["plan"] = (plan.k, plan.q)
    return col, report


class KuhnEdgeProgram(VertexProgram):
    """Round-robin edge labels; color = ordered label pair; 2 rounds."""

    def __init__(self, ctx: Context):
        super().__init__(ctx)
        self.pp = ctx.params["p_prime"]
        self.labels = {
            u: 1 + i % self.pp for i, u in enumerate(ctx.neighbors)
        }
        self.colors: Dict[int, int] = {}
        self.confirm: Dict[int, int] = {}

    def step(self, round_no, inbox):
        if round_no == 1:
            if not self.ctx.neighbors:
                self.output = {}
            return {
                u: Message((self.labels[u] - 1, self.pp)) for u in self.ctx.neighbors
            }
        if round_no == 2:
            for u, msg in inbox:
                other = msg.fields[0][0] + 1
                mine = self.labels[u]
                lo, hi = (mine, other) if self.ctx.vid < u else (other, mine)
                self.colors[u] = (lo - 1) * self.pp + hi
            return {
                u: Message((self.colors[u] - 1, self.pp * self.pp))
                for u in self.ctx.neighbors
            }
        for u, msg in inbox:
            self.confirm[u] = msg.fields[0][0] + 1
        if len(self.confirm) == len(self.ctx.neighbors):
            assert self.confirm == self.colors, "endpoint color mismatch"
            self.output = dict(self.colors)
        return {}


def kuhn_defective_edge(g: Graph, p_prime: int) -> Tuple[EdgeColoring, SimReport]:
    """4*ceil(delta/p')-defective p'^2-edge-coloring in exactly 2 rounds."""
    if not (1 <= p_prime <= max(g.delta, 1)):
        raise ValueError(f"p_prime must be in 1..delta, got {p_prime}")
    report = run(g, KuhnEdgeProgram, msg_mode="wide", params={"p_prime": p_prime})
    colors: Dict[Tuple[int, int], int] = {}
    for u, w in g.edges():
        cu = report.outputs[u][w]
        cw = report.outputs[w][u]
        assert cu == cw, f"endpoints disagree on edge ({u},{w})"
        colors[(u, w)] = cu
    claimed = 4 * (-(-g.delta // p_prime)) if g.delta else 0
    return EdgeColoring(colors, p_prime * p_prime, claimed), report
