"""Recursive legal coloring and its single-level defective core.

One vertex program drives everything. A run is a sequence of levels: each
defective level computes an auxiliary coloring phi of the current subgraph and
then the recolor loop turns it into a psi-color in 1..p, which names the
subgraph the vertex joins at the next level. The final level legally colors the
remaining bounded-degree subgraph and every vertex merges its psi-history into
a globally unique palette slot by pure arithmetic.

The recursion is realized as phases of one program: all sibling subgraphs
advance in the same global rounds, and a vertex knows its subgraph from its own
psi-history, so no coordination is needed. Progress is event-driven: a vertex
advances a phase as soon as the messages it depends on have arrived, which can
be earlier than the worst-case schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .base import choose_point, step_color
from .coloring import VertexColoring
from .graph import Graph
from .numbers import PolyPlan, kuhn_step_plan, linial_schedule
from .params import (
    DefectiveParams,
    LegalParams,
    ParamError,
    defect_bound,
    recursion_schedule,
    vartheta_of_schedule,
)
from .sim import Context, Message, SimReport, VertexProgram, run

K_LIN, K_PHI, K_PSI, K_RED = 0, 1, 2, 3
N_KINDS = 4

PHI_MODES = ("fast", "simple", "improved")


@dataclass
class LegalResult:
    phi: VertexColoring
    vartheta: int
    depth: int
    level_lambdas: List[int]


def _level_plans(
    mode: str,
    schedule: List[int],
    params: LegalParams,
    n0: int,
) -> Tuple[List[dict], dict]:
    """Pure arithmetic: per-level linial/defective-step plans plus the bottom."""
    r = len(schedule) - 1
    levels: List[dict] = []
    rho_palette = None
    for i in range(r):
        Lam = schedule[i]
        d = Lam // (params.b * params.p)
        level = {"kind": "std", "Lambda": Lam, "p": params.p, "d": d}
        if mode == "improved":
            if i == 0:
                plans = linial_schedule(n0, max(Lam, 1))
                rho_palette = plans[-1].palette if plans else n0
                level["lin_plans"] = plans
            else:
                level["lin_plans"] = []
            level["kuhn_plan"] = kuhn_step_plan(rho_palette, Lam, d)
            level["rho_source"] = "global"
            level["phi_palette"] = level["kuhn_plan"].palette
        elif mode == "fast":
            plans = linial_schedule(n0, max(Lam, 1))
            local_pal = plans[-1].palette if plans else n0
            level["lin_plans"] = plans
            level["kuhn_plan"] = kuhn_step_plan(local_pal, Lam, d)
            level["rho_source"] = "level"
            level["phi_palette"] = level["kuhn_plan"].palette
        else:  # simple: the legal coloring itself serves as the 0-defective phi
            plans = linial_schedule(n0, max(Lam, 1))
            level["lin_plans"] = plans
            level["kuhn_plan"] = None
            level["rho_source"] = "level"
            level["phi_palette"] = plans[-1].palette if plans else n0
        levels.append(level)
    hat = schedule[-1]
    if mode == "improved" and rho_palette is not None:
        bot_plans = linial_schedule(rho_palette, max(hat, 1))
        bottom = {"start": "rho", "lin_plans": bot_plans, "start_palette": rho_palette}
    else:
        bot_plans = linial_schedule(n0, max(hat, 1))
        bottom = {"start": "id", "lin_plans": bot_plans, "start_palette": n0}
    bottom["Lambda"] = hat
    bottom["target"] = hat + 1
    return levels, bottom


def _suffix_widths(levels: List[dict], bottom_width: int) -> List[int]:
    """suffix[i] = palette width of one level-i subgraph's block."""
    out = [bottom_width]
    for level in reversed(levels):
        out.append(out[-1] * level["p"])
    out.reverse()
    return out


class RecursiveColorProgram(VertexProgram):
    def __init__(self, ctx: Context):
        super().__init__(ctx)
        P = ctx.params
        self.levels: List[dict] = P["levels"]
        self.bottom: dict = P["bottom"]
        self.suffix: List[int] = P["suffix"]
        self.single_level: bool = P.get("single_level", False)
        self.rnd = 0
        self.hist: List[int] = []
        self.phis: Dict[int, int] = {}
        self.same: List[int] = []
        self.level = -1
        self.stage = "enter"
        # per-neighbor stores
        self.nbr_psi: Dict[int, Dict[int, int]] = {u: {} for u in ctx.neighbors}
        self.nbr_lin: Dict[int, Dict[Tuple[int, int], int]] = {u: {} for u in ctx.neighbors}
        self.nbr_phi: Dict[int, Dict[int, int]] = {u: {} for u in ctx.neighbors}
        self.nbr_red: Dict[int, int] = {}
        # lin phase state
        self.lin_iter = 0
        self.cur_lin = ctx.vid
        self.rho_level: Dict[int, int] = {}  # own lin-final per level (incl. bottom)
        self.bot_cur = None
        self.telemetry = {"r_phi": {}, "r_psi": {}}

    # -- message handling ----------------------------------------------------

    def step(self, round_no, inbox):
        self.rnd = round_no
        for u, msg in inbox:
            self._store(u, msg)
        out: Dict[int, list] = {}
        if self.output is None:
            self._advance(out)
        return out

    def _store(self, u, msg):
        kind = msg.fields[0][0]
        if kind == K_LIN:
            lvl, it, col = (msg.fields[i][0] for i in (1, 2, 3))
            self.nbr_lin[u][(lvl, it)] = col + 1
        elif kind == K_PHI:
            lvl, col = msg.fields[1][0], msg.fields[2][0]
            self.nbr_phi[u][lvl] = col + 1
        elif kind == K_PSI:
            lvl, col = msg.fields[1][0], msg.fields[2][0]
            self.nbr_psi[u][lvl] = col + 1
        elif kind == K_RED:
            self.nbr_red[u] = msg.fields[1][0] + 1

    def _bcast(self, out, msg):
        for u in self.same:
            out.setdefault(u, []).append(msg)

    # -- helpers -------------------------------------------------------------

    def _nbr_base(self, u: int, lvl_key: int) -> int:
        """Neighbor's iteration-0 color for a lin phase."""
        if lvl_key == len(self.levels) and self.bottom["start"] == "rho":
            return self._nbr_rho_global(u)
        return u

    def _nbr_rho_global(self, u: int) -> Optional[int]:
        plans0 = self.levels[0]["lin_plans"]
        if not plans0:
            return u
        return self.nbr_lin[u].get((0, len(plans0)))

    def _nbr_lin_color(self, u: int, lvl_key: int, it: int) -> Optional[int]:
        if it == 0:
            return self._nbr_base(u, lvl_key)
        return self.nbr_lin[u].get((lvl_key, it))

    def _lin_plans(self, lvl_key: int) -> List[PolyPlan]:
        if lvl_key == len(self.levels):
            return self.bottom["lin_plans"]
        return self.levels[lvl_key]["lin_plans"]

    # -- the state machine ---------------------------------------------------

    def _advance(self, out):
        progress = True
        while progress and self.output is None:
            progress = getattr(self, "_do_" + self.stage)(out)

    def _do_enter(self, out) -> bool:
        nxt = self.level + 1
        if nxt == 0:
            self.same = list(self.ctx.neighbors)
        else:
            prev = self.level
            if any(prev not in self.nbr_psi[u] for u in self.same):
                return False
            self.same = [
                u for u in self.same if self.nbr_psi[u][prev] == self.hist[prev]
            ]
        self.level = nxt
        if nxt == len(self.levels):
            self.stage = "lin"
            self.lin_iter = 0
            if self.bottom["start"] == "rho":
                self.cur_lin = self.rho_level[0]
            else:
                self.cur_lin = self.ctx.vid
            return True
        level = self.levels[nxt]
        if level["kind"] == "pre_random":
            rng = np.random.Generator(
                np.random.Philox(key=[self.ctx.seed, self.ctx.vid])
            )
            psi = 1 + int(rng.integers(level["p"]))
            self._decide_psi(out, psi)
            return True
        self.stage = "lin"
        self.lin_iter = 0
        self.cur_lin = self.ctx.vid
        return True

    def _do_lin(self, out) -> bool:
        lvl = self.level
        plans = self._lin_plans(lvl)
        progress = False
        while self.lin_iter < len(plans):
            cols = []
            ready = True
            for u in self.same:
                c = self._nbr_lin_color(u, lvl, self.lin_iter)
                if c is None:
                    ready = False
                    break
                cols.append(c)
            if not ready:
                break
            plan = plans[self.lin_iter]
            x, _ = choose_point(self.cur_lin, cols, plan)
            self.cur_lin = step_color(self.cur_lin, x, plan)
            self.lin_iter += 1
            msg = Message(
                (K_LIN, N_KINDS),
                (lvl, len(self.levels) + 1),
                (self.lin_iter, len(plans) + 1),
                (self.cur_lin - 1, plan.palette),
            )
            self._bcast(out, msg)
            progress = True
        if self.lin_iter == len(plans):
            self.rho_level[lvl] = self.cur_lin
            self.stage = "bot_red" if lvl == len(self.levels) else "phi"
            if lvl == len(self.levels):
                self.bot_cur = self.cur_lin
            return True
        return progress

    def _do_phi(self, out) -> bool:
        level = self.levels[self.level]
        plan = level["kuhn_plan"]
        if plan is None:
            phi = self.rho_level[self.level]
        else:
            if level["rho_source"] == "global":
                cols = [self._nbr_rho_global(u) for u in self.same]
                own = self.rho_level[0]
            else:
                plans = level["lin_plans"]
                cols = [self._nbr_lin_color(u, self.level, len(plans)) for u in self.same]
                own = self.rho_level[self.level]
            if any(c is None for c in cols):
                return False
            x, _ = choose_point(own, cols, plan)
            phi = step_color(own, x, plan)
        self.phis[self.level] = phi
        self.telemetry["r_phi"][self.level] = self.rnd
        msg = Message(
            (K_PHI, N_KINDS),
            (self.level, len(self.levels) + 1),
            (phi - 1, level["phi_palette"]),
        )
        self._bcast(out, msg)
        if level["kind"] == "pre_kuhn":
            self._decide_psi(out, phi)
        else:
            self.stage = "psi"
        return True

    def _do_psi(self, out) -> bool:
        level = self.levels[self.level]
        lvl = self.level
        own_phi = self.phis[lvl]
        smaller = []
        for u in self.same:
            up = self.nbr_phi[u].get(lvl)
            if up is None:
                return False
            if up < own_phi:
                smaller.append(u)
        if any(lvl not in self.nbr_psi[u] for u in smaller):
            return False
        p = level["p"]
        counts = [0] * (p + 1)
        for u in smaller:
            counts[self.nbr_psi[u][lvl]] += 1
        psi = min(range(1, p + 1), key=lambda k: (counts[k], k))
        self._decide_psi(out, psi)
        return True

    def _decide_psi(self, out, psi: int):
        lvl = self.level
        level = self.levels[lvl]
        self.hist.append(psi)
        self.telemetry["r_psi"][lvl] = self.rnd
        msg = Message(
            (K_PSI, N_KINDS),
            (lvl, len(self.levels) + 1),
            (psi - 1, level["p"]),
        )
        self._bcast(out, msg)
        if self.single_level:
            self.output = {"phi": self.phis.get(lvl, 0), "psi": psi}
            return
        self.stage = "enter"

    def _do_bot_red(self, out) -> bool:
        plans = self.bottom["lin_plans"]
        n_it = len(plans)
        lvl = len(self.levels)
        cur: Dict[int, int] = {}
        for u in self.same:
            c = self.nbr_red.get(u)
            if c is None:
                c = self._nbr_lin_color(u, lvl, n_it)
            if c is None:
                return False
            cur[u] = c
        target = self.bottom["target"]
        if self.bot_cur <= target:
            self._finalize()
            return True
        for u, c in cur.items():
            if c > target and (c, u) > (self.bot_cur, self.ctx.vid):
                return False  # wait for a bigger competitor to recolor first
        used = set(cur.values())
        k = 1
        while k in used:
            k += 1
        self.bot_cur = k
        maxpal = max(
            plans[-1].palette if plans else self.bottom.get("start_palette", self.ctx.n),
            target,
            self.ctx.n + 2,
        )
        msg = Message((K_RED, N_KINDS), (self.bot_cur - 1, maxpal))
        self._bcast(out, msg)
        self._finalize()
        return True

    def _finalize(self):
        color = self.bot_cur
        for i, psi in enumerate(self.hist):
            color += (psi - 1) * self.suffix[i + 1]
        self.telemetry["out_round"] = self.rnd
        self.telemetry["bot_color"] = self.bot_cur
        self.output = {"color": color, "psi_hist": list(self.hist)}


# -- wrappers -----------------------------------------------------------------


def _run_recursive(
    g: Graph,
    levels: List[dict],
    bottom: dict,
    single_level: bool = False,
    seed: int = 0,
    round_cap: int = 100_000,
) -> SimReport:
    suffix = _suffix_widths(levels, bottom["target"])
    params = {
        "levels": levels,
        "bottom": bottom,
        "suffix": suffix,
        "single_level": single_level,
    }
    return run(
        g,
        RecursiveColorProgram,
        msg_mode="wide",
        round_cap=round_cap,
        params=params,
        seed=seed,
    )


def defective_color(
    g: Graph, params: DefectiveParams, phi_mode: str = "fast"
) -> Tuple[VertexColoring, SimReport]:
    """psi with palette <= p and measured defect <= defect_bound(params)."""
    if phi_mode not in ("fast", "simple"):
        raise ParamError(f"phi_mode must be fast or simple, got {phi_mode!r}")
    params.validate(delta=g.delta)
    levels, bottom = _level_plans(
        "fast" if phi_mode == "fast" else "simple",
        [params.Lambda, 0],
        LegalParams(params.b, params.p, 1, params.c, preset="custom"),
        max(g.id_bound, 1),
    )
    levels = levels[:1]
    report = _run_recursive(g, levels, {"start": "id", "lin_plans": [], "Lambda": 0, "target": 1}, single_level=True)
    psi = VertexColoring(
        {v: out["psi"] for v, out in report.outputs.items()},
        params.p,
        defect_bound(params),
    )
    phi = VertexColoring(
        {v: out["phi"] for v, out in report.outputs.items()},
        levels[0]["phi_palette"],
        levels[0]["Lambda"],
    )
    report.extra["phi_palette"] = levels[0]["phi_palette"]
    report.extra["phi_colors"] = dict(phi.colors)
    r_phis = [t["r_phi"].get(0, 0) for t in report.telemetry.values()]
    r_psis = [t["r_psi"].get(0, 0) for t in report.telemetry.values()]
    report.extra["loop_rounds"] = max(r_psis, default=0) - max(r_phis, default=0)
    return psi, report


def legal_color(
    g: Graph,
    params: LegalParams,
    phi_mode: str = "fast",
    seed: int = 0,
) -> Tuple[LegalResult, SimReport]:
    if phi_mode not in PHI_MODES:
        raise ParamError(f"unknown phi_mode {phi_mode!r}")
    Lambda0 = max(g.delta, 1)
    params.validate(Lambda0)
    schedule = recursion_schedule(params, Lambda0)
    levels, bottom = _level_plans(phi_mode, schedule, params, max(g.id_bound, 1))
    report = _run_recursive(g, levels, bottom, seed=seed)
    colors = {v: out["color"] for v, out in report.outputs.items()}
    vartheta = vartheta_of_schedule(schedule, params.p)
    suffix = _suffix_widths(levels, bottom["target"])
    assert suffix[0] == vartheta, "palette accounting mismatch"
    result = LegalResult(
        phi=VertexColoring(colors, vartheta, 0),
        vartheta=vartheta,
        depth=len(schedule) - 1,
        level_lambdas=list(schedule),
    )
    report.extra["vartheta"] = vartheta
    report.extra["level_lambdas"] = list(schedule)
    if phi_mode == "improved" and levels:
        report.extra["rho_rounds"] = len(levels[0]["lin_plans"])
    return result, report


def improved_legal_color(
    g: Graph, params: LegalParams, seed: int = 0
) -> Tuple[LegalResult, SimReport]:
    """legal_color with the one-time global auxiliary coloring; per-level cost
    is then independent of n."""
    return legal_color(g, params, phi_mode="improved", seed=seed)
