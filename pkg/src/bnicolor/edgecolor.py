"""Edge coloring: the direct short-message variant and the line-graph path.

The direct variant runs one program on the host graph; each vertex maintains
the state of all its incident edges and every decision about an edge is made
symmetrically and deterministically at both endpoints, so no owner election is
needed. Per-edge messages always travel on the edge's own channel, hence no
addressing fields are required.

Symmetric timing rule: whenever an edge decision needs data from both sides,
each endpoint sends its part as soon as its side is ready and treats its own
part as self-delivered with the same one-round latency; the decision fires at
max(self-delivery, other's arrival), which evaluates to the same round at both
endpoints. In `short` mode multi-value payloads are split into consecutive
single-message chunks under the log-n bit budget; in `wide` mode they go out
in one round.

Optionally the recolor loop is paced: an edge with auxiliary color phi waits
until slot R + phi * s (R = round the group's phi-exchange finished, s = slot
width in rounds), which makes the per-level duration track the phi-palette
instead of the dependency-chain depth.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

from .coloring import EdgeColoring
from .graph import Graph, LineGraphMap, build_line_graph
from .numbers import PolyPlan, ceil_log2, linial_schedule, poly_coeffs, poly_eval
from .params import LegalParams, ParamError, recursion_schedule
from .sim import Context, Message, SimReport, VertexProgram, run

K_LAB, K_RDY, K_CNT, K_BLIN, K_USED, K_RDY2 = range(6)
N_KINDS = 6


def conflict_bitmap(own_color: int, nbr_colors: List[int], plan: PolyPlan) -> int:
    """Bit x set iff some neighbor polynomial agrees with ours at x."""
    k, q = plan.k, plan.q
    own = poly_coeffs(own_color, k, q)
    bits = 0
    for col in nbr_colors:
        other = poly_coeffs(col, k, q)
        if other == own:
            bits = (1 << q) - 1
            break
        diff = [(a - b) % q for a, b in zip(own, other)]
        for x in range(q):
            if poly_eval(diff, x, q) == 0:
                bits |= 1 << x
    return bits


def smallest_pprime(Lambda: int, d: int) -> int:
    """Smallest p' whose round-robin label defect fits under d.

    An edge has at most ceil(Lambda/p') - 1 same-label co-incident edges per
    endpoint, so its phi-defect is at most 2*ceil(Lambda/p') - 2; p' = Lambda
    always satisfies the condition, hence every level is feasible.
    """
    if d < 0:
        raise ParamError(f"defect target must be nonnegative, got {d}")
    for pp in range(1, Lambda + 1):
        if 2 * (-(-Lambda // pp)) - 2 <= d:
            return pp
    return Lambda


def _uniform_pprime(schedule: List[int], params: LegalParams) -> int:
    """One p' valid for every level: at least 2bp+1 (enough for Lambda >> bp)
    and at least each level's minimal feasible value."""
    base = 2 * params.b * params.p + 1
    out = base
    for Lam in schedule[:-1]:
        d = Lam // (params.b * params.p)
        pp = base
        while pp < Lam and 2 * (-(-Lam // pp)) - 2 > d:
            pp += 1
        out = max(out, pp, smallest_pprime(Lam, d))
    return out


def edge_level_plans(
    schedule: List[int],
    params: LegalParams,
    m_total: int,
    uniform_pprime: bool = False,
) -> Tuple[List[dict], dict]:
    r = len(schedule) - 1
    levels = []
    fixed_pp = _uniform_pprime(schedule, params) if uniform_pprime else None
    for i in range(r):
        Lam = schedule[i]
        d = Lam // (params.b * params.p)
        pp = fixed_pp if fixed_pp is not None else smallest_pprime(Lam, d)
        levels.append(
            {
                "Lambda": Lam,
                "p": params.p,
                "d": d,
                "p_prime": pp,
                "phi_palette": pp * pp,
            }
        )
    # schedule entries bound the INCIDENT degree (line-graph degree), so the
    # bottom greedy needs hat+1 colors; for the whole graph hat = 2*(delta-1)
    # recovers the classical 2*delta-1.
    hat = schedule[-1]
    plans = linial_schedule(max(m_total, 1), max(hat, 1))
    bottom = {
        "Lambda": hat,
        "target": hat + 1,
        "lin_plans": plans,
        "start_palette": max(m_total, 1),
    }
    return levels, bottom


def _suffix(levels: List[dict], bottom_width: int) -> List[int]:
    out = [bottom_width]
    for level in reversed(levels):
        out.append(out[-1] * level["p"])
    out.reverse()
    return out


class _Exchange:
    """One symmetric payload exchange on an edge channel."""

    __slots__ = ("self_arr", "parts", "total", "done_round", "decided")

    def __init__(self, total: int):
        self.self_arr: Optional[int] = None
        self.parts: Dict[int, List[int]] = {}
        self.total = total
        self.done_round: Optional[int] = None
        self.decided = False

    def other_values(self) -> List[int]:
        vals: List[int] = []
        for i in range(self.total):
            vals.extend(self.parts[i])
        return vals

    def ready_round(self) -> Optional[int]:
        if self.self_arr is None or self.done_round is None:
            return None
        return max(self.self_arr, self.done_round)


class EdgeSlot:
    __slots__ = (
        "nbr",
        "hist",
        "level",
        "stage",
        "phi",
        "R",
        "lin_hist",
        "lin_iter",
        "phi_bot",
        "final",
        "color",
        "exch",
        "tele",
    )

    def __init__(self, nbr: int, rank: int):
        self.nbr = nbr
        self.hist: List[int] = []
        self.level = 0
        self.stage = "labels"
        self.phi: Dict[int, int] = {}
        self.R: Dict[Any, Any] = {}
        self.lin_hist: List[int] = [rank]
        self.lin_iter = 0
        self.phi_bot: Optional[int] = None
        self.final: Optional[int] = None
        self.color: Optional[int] = None
        self.exch: Dict[Tuple, _Exchange] = {}
        self.tele: Dict[str, Any] = {"phi": {}, "psi": {}}


class EdgeColorProgram(VertexProgram):
    def __init__(self, ctx: Context):
        super().__init__(ctx)
        P = ctx.params
        self.levels: List[dict] = P["levels"]
        self.bottom: dict = P["bottom"]
        self.suffix: List[int] = P["suffix"]
        self.short = P.get("short", False)
        self.paced = P.get("paced", False)
        self._need: List[int] = []
        self.budget = P.get("budget_bits", ceil_log2(max(ctx.n, 2)))
        self.lvl_dom = len(self.levels) + 2
        self.cnt_dom = (self.levels[0]["Lambda"] + 2) if self.levels else 2
        self.it_dom = max(len(self.bottom["lin_plans"]) + 2, 2)
        self.idx_dom = 64
        header = (
            ceil_log2(N_KINDS)
            + ceil_log2(self.lvl_dom)
            + ceil_log2(self.it_dom)
            + ceil_log2(self.idx_dom)
        )
        # at least one value per chunk even if the budget can't cover it
        self.chunk_budget = max(self.budget - header, 1)
        self.ranks: Dict[int, int] = {
            u: P["rank"][(ctx.vid, u) if ctx.vid < u else (u, ctx.vid)]
            for u in ctx.neighbors
        }
        self.slots: Dict[int, EdgeSlot] = {
            u: EdgeSlot(u, self.ranks[u]) for u in ctx.neighbors
        }
        if not self.levels:
            for s in self.slots.values():
                s.stage = "bot_wait"
        self.queues: Dict[int, List[Message]] = {u: [] for u in ctx.neighbors}
        self.qrounds: Dict[int, int] = {u: 0 for u in ctx.neighbors}
        self.rnd = 0
        self.single_phase = P.get("single_phase", False)
        self.telemetry = {"edges": {u: s.tele for u, s in self.slots.items()}}

    # -- payload plumbing ----------------------------------------------------

    def _n_chunks(self, values: List[Tuple[int, int]]) -> int:
        if not self.short:
            return 1
        chunks, used = 1, 0
        for _, dom in values:
            b = ceil_log2(dom)
            if used and used + b > self.chunk_budget:
                chunks += 1
                used = 0
            used += b
        return chunks

    def _submit(self, u: int, kind: int, lvl: int, it: int, values: List[Tuple[int, int]]):
        """Queue a payload to u and record the self-delivery round."""
        ex = self.exch_of(u, kind, lvl, it)
        header = [
            (kind, N_KINDS),
            (lvl, self.lvl_dom),
            (it, self.it_dom),
        ]
        msgs: List[Message] = []
        if not self.short:
            msgs.append(Message(*header, (0, self.idx_dom), *values))
        else:
            chunk: List[Tuple[int, int]] = []
            used = 0
            idx = 0
            for f in values:
                b = ceil_log2(f[1])
                if chunk and used + b > self.chunk_budget:
                    msgs.append(Message(*header, (idx, self.idx_dom), *chunk))
                    idx += 1
                    chunk, used = [], 0
                chunk.append(f)
                used += b
            msgs.append(Message(*header, (idx, self.idx_dom), *chunk))
        assert not self.queues[u], "per-edge payloads are sequential"
        self.queues[u].extend(msgs)
        ex.total = len(msgs)
        ex.self_arr = self.rnd + len(msgs)
        return ex

    def exch_of(self, u, kind, lvl, it) -> _Exchange:
        key = (u, kind, lvl, it)
        if key not in self.slots[u].exch:
            self.slots[u].exch[key] = _Exchange(total=-1)
        return self.slots[u].exch[key]

    def _store(self, u: int, msg: Message):
        kind, lvl, it, idx = (msg.fields[i][0] for i in range(4))
        ex = self.exch_of(u, kind, lvl, it)
        ex.parts[idx] = [f[0] for f in msg.fields[4:]]
        if self._expected_chunks(kind, lvl, it) == len(ex.parts):
            ex.done_round = self.rnd

    def _expected_chunks(self, kind, lvl, it) -> int:
        return self._n_chunks(self._payload_shape(kind, lvl, it))

    def _payload_shape(self, kind, lvl, it) -> List[Tuple[int, int]]:
        """Domain layout of a payload (values are placeholders); both endpoints
        derive the identical layout, so chunk counts need no extra signaling."""
        if kind == K_LAB:
            pp = self.levels[lvl]["p_prime"]
            return [(0, pp)]
        if kind in (K_RDY, K_RDY2):
            return [(0, 2)]
        if kind == K_CNT:
            # one fixed field width across levels keeps the per-level chunk
            # count (and so the per-level round cost) uniform
            return [(0, self.cnt_dom)] * self.levels[lvl]["p"]
        if kind == K_BLIN:
            q = self.bottom["lin_plans"][it].q
            return [(0, 256)] * ((q + 7) // 8)
        if kind == K_USED:
            W = self.bottom["target"]
            return [(0, 256)] * ((W + 7) // 8)
        raise AssertionError(kind)

    def _bitmap_fields(self, bits: int, width: int) -> List[Tuple[int, int]]:
        nbytes = (width + 7) // 8
        return [((bits >> (8 * i)) & 0xFF, 256) for i in range(nbytes)]

    @staticmethod
    def _bitmap_from(values: List[int]) -> int:
        out = 0
        for i, b in enumerate(values):
            out |= b << (8 * i)
        return out

    # -- main step -----------------------------------------------------------

    def step(self, round_no, inbox):
        self.rnd = round_no
        for u, msg in inbox:
            self._store(u, msg)
        if round_no == 1:
            self._start_level_groups(0)
        self._advance()
        out: Dict[int, List[Message]] = {}
        pending = False
        for u, q in self.queues.items():
            if not q:
                continue
            if self.short:
                out[u] = [q.pop(0)]
            else:
                out[u] = list(q)
                q.clear()
            if q:
                pending = True
        wakes = [w for w in self._need if w > round_no]
        if pending:
            wakes.append(round_no + 1)
        self.wake = min(wakes) if wakes else None
        if all(s.color is not None for s in self.slots.values()) and not pending:
            self.output = {u: s.color for u, s in self.slots.items()}
        return out

    # -- group bookkeeping ---------------------------------------------------

    def _group_members(self, lvl: int, hist: Tuple[int, ...]) -> List[int]:
        return [
            u
            for u, s in self.slots.items()
            if len(s.hist) >= lvl and tuple(s.hist[:lvl]) == hist
        ]

    def _parent_ready(self, lvl: int, hist: Tuple[int, ...]) -> bool:
        """All edges of the level-(lvl-1) parent group have decided psi_{lvl-1}."""
        if lvl == 0:
            return True
        parent = hist[:-1]
        for u, s in self.slots.items():
            if tuple(s.hist[: lvl - 1]) == parent and len(s.hist) < lvl:
                return False
        return True

    def _start_level_groups(self, lvl: int):
        """Assign round-robin labels for every group at this level whose
        membership is final and whose labels are not yet out."""
        if lvl >= len(self.levels):
            return
        pp = self.levels[lvl]["p_prime"]
        seen = set()
        for u, s in self.slots.items():
            if s.level != lvl or s.stage != "labels":
                continue
            hist = tuple(s.hist[:lvl])
            if hist in seen:
                continue
            seen.add(hist)
            if not self._parent_ready(lvl, hist):
                continue
            members = sorted(self._group_members(lvl, hist))
            for i, w in enumerate(members):
                label = 1 + i % pp
                sw = self.slots[w]
                sw.stage = "phi"
                sw.R[("lab", lvl)] = label
                self._submit(w, K_LAB, lvl, 0, [(label - 1, pp)])

    # -- the advance loop ----------------------------------------------------

    def _advance(self):
        self._need: List[int] = []
        progress = True
        while progress:
            progress = False
            for u in self.ctx.neighbors:
                s = self.slots[u]
                if s.color is not None:
                    continue
                if self._advance_slot(s):
                    progress = True

    def _advance_slot(self, s: EdgeSlot) -> bool:
        if s.level < len(self.levels):
            if s.stage == "labels":
                return False  # waits for _start_level_groups
            if s.stage == "phi":
                return self._slot_phi(s)
            if s.stage == "rdy":
                return self._slot_rdy(s)
            if s.stage == "loop":
                return self._slot_loop(s)
            return False
        if s.stage == "bot_wait":
            return self._slot_bot_start(s)
        if s.stage == "bot_lin":
            return self._slot_bot_lin(s)
        if s.stage == "greedy":
            return self._slot_greedy(s)
        return False

    def _slot_phi(self, s: EdgeSlot) -> bool:
        lvl = s.level
        ex = self.exch_of(s.nbr, K_LAB, lvl, 0)
        rr = ex.ready_round()
        if rr is None or rr > self.rnd:
            if rr is not None:
                self._need.append(rr)
            return False
        level = self.levels[lvl]
        mine = s.R[("lab", lvl)]
        other = ex.other_values()[0] + 1
        lo, hi = (mine, other) if self.ctx.vid < s.nbr else (other, mine)
        s.phi[lvl] = (lo - 1) * level["p_prime"] + hi
        # record the symmetric ready round, not the (possibly later) step round
        s.tele["phi"][lvl] = [rr, s.phi[lvl]]
        s.stage = "rdy"
        self._maybe_send_rdy(lvl, tuple(s.hist[:lvl]))
        return True

    def _maybe_send_rdy(self, lvl: int, hist: Tuple[int, ...]):
        members = self._group_members(lvl, hist)
        if any(lvl not in self.slots[w].phi for w in members):
            return
        for w in members:
            if ("rdy_sent", lvl) not in self.slots[w].R:
                self.slots[w].R[("rdy_sent", lvl)] = self.rnd
                self._submit(w, K_RDY, lvl, 0, [(1, 2)])

    def _slot_rdy(self, s: EdgeSlot) -> bool:
        lvl = s.level
        ex = self.exch_of(s.nbr, K_RDY, lvl, 0)
        rr = ex.ready_round()
        if rr is None or rr > self.rnd:
            if rr is not None:
                self._need.append(rr)
            return False
        s.R[("R", lvl)] = rr
        s.stage = "loop"
        return True

    def _side_counters(self, s: EdgeSlot, lvl: int) -> Optional[List[int]]:
        """N_{e,v}(k): counts over this side's group edges with smaller phi and
        decided psi at this level. None while some of them are undecided."""
        hist = tuple(s.hist[:lvl])
        p = self.levels[lvl]["p"]
        counts = [0] * (p + 1)
        for w in self._group_members(lvl, hist):
            if w == s.nbr:
                continue
            sw = self.slots[w]
            if sw.phi[lvl] < s.phi[lvl]:
                if len(sw.hist) <= lvl:
                    return None
                counts[sw.hist[lvl]] += 1
        return counts[1:]

    def _slot_loop(self, s: EdgeSlot) -> bool:
        lvl = s.level
        level = self.levels[lvl]
        key = (s.nbr, K_CNT, lvl, 0)
        ex = self.slots[s.nbr].exch.get(key)
        if ex is None or ex.self_arr is None:
            counts = self._side_counters(s, lvl)
            if counts is None:
                return False
            vals = [(min(c, self.cnt_dom - 1), self.cnt_dom) for c in counts]
            ex = self._submit(s.nbr, K_CNT, lvl, 0, vals)
            ex.decided = False
            s.R[("cnt", lvl)] = tuple(c for c, _ in vals)
            return True
        rr = ex.ready_round()
        floor = 0
        if self.paced:
            slot_w = self._n_chunks(self._payload_shape(K_CNT, lvl, 0)) + 2
            floor = s.R[("R", lvl)] + s.phi[lvl] * slot_w
        if rr is None:
            return False
        due = max(rr, floor)
        if due > self.rnd:
            self._need.append(due)
            return False
        mine = s.R[("cnt", lvl)]
        other = ex.other_values()
        p = level["p"]
        totals = [mine[k] + other[k] for k in range(p)]
        psi = 1 + min(range(p), key=lambda k: (totals[k], k))
        s.hist.append(psi)
        s.tele["psi"][lvl] = [due, psi]
        s.level += 1
        if s.level < len(self.levels):
            s.stage = "labels"
            # this decision may have finalized a next-level group's membership
            self._start_level_groups(s.level)
        else:
            s.stage = "bot_wait"
        return True

    # -- bottom --------------------------------------------------------------

    def _slot_bot_start(self, s: EdgeSlot) -> bool:
        lvl = len(self.levels)
        hist = tuple(s.hist)
        if not self._parent_ready(lvl, hist):
            return False
        s.stage = "bot_lin"
        s.lin_iter = 0
        s.lin_hist = [self.ranks[s.nbr]]
        return True

    def _side_lin_ready(self, s: EdgeSlot, it: int) -> bool:
        hist = tuple(s.hist)
        for w in self._group_members(len(self.levels), hist):
            sw = self.slots[w]
            if sw.stage == "bot_wait" or sw.lin_iter < it:
                return False
        return True

    def _slot_bot_lin(self, s: EdgeSlot) -> bool:
        plans = self.bottom["lin_plans"]
        lvl = len(self.levels)
        if s.lin_iter == len(plans):
            s.phi_bot = s.lin_hist[-1]
            s.tele["phi"]["bot"] = [s.R.get(("lin_rnd",), 0), s.phi_bot]
            s.stage = "greedy"
            self._maybe_send_rdy2(tuple(s.hist))
            return True
        it = s.lin_iter
        plan = plans[it]
        cur = s.lin_hist[it]
        ex = self.slots[s.nbr].exch.get((s.nbr, K_BLIN, lvl, it))
        if ex is None or ex.self_arr is None:
            if not self._side_lin_ready(s, it):
                return False
            cols = [
                self.slots[w].lin_hist[it]
                for w in self._group_members(lvl, tuple(s.hist))
                if w != s.nbr
            ]
            bits = conflict_bitmap(cur, cols, plan)
            self._submit(s.nbr, K_BLIN, lvl, it, self._bitmap_fields(bits, plan.q))
            s.R[("blin", it)] = bits
            return True
        rr = ex.ready_round()
        if rr is None or rr > self.rnd:
            if rr is not None:
                self._need.append(rr)
            return False
        union = s.R[("blin", it)] | self._bitmap_from(ex.other_values())
        q = plan.q
        x = 0
        while x < q and (union >> x) & 1:
            x += 1
        if x == q:
            x = 0  # degraded: no conflict-free point (degree bound violated)
        val = poly_eval(poly_coeffs(cur, plan.k, plan.q), x, plan.q)
        s.lin_hist.append(x * q + val + 1)
        s.lin_iter += 1
        s.R[("lin_rnd",)] = rr
        return True

    def _maybe_send_rdy2(self, hist: Tuple[int, ...]):
        members = self._group_members(len(self.levels), hist)
        if any(self.slots[w].phi_bot is None for w in members):
            return
        for w in members:
            if ("rdy2_sent",) not in self.slots[w].R:
                self.slots[w].R[("rdy2_sent",)] = self.rnd
                self._submit(w, K_RDY2, len(self.levels), 0, [(1, 2)])

    def _side_used(self, s: EdgeSlot) -> Optional[int]:
        """Bitmap of final colors on this side; None while a smaller-(phi,rank)
        group edge is undecided."""
        hist = tuple(s.hist)
        mykey = (s.phi_bot, self.ranks[s.nbr])
        W = self.bottom["target"]
        bits = 0
        for w in self._group_members(len(self.levels), hist):
            if w == s.nbr:
                continue
            sw = self.slots[w]
            if sw.phi_bot is None:
                return None
            if (sw.phi_bot, self.ranks[w]) < mykey and sw.final is None:
                return None
            if sw.final is not None and sw.final <= W:
                bits |= 1 << (sw.final - 1)
        return bits

    def _slot_greedy(self, s: EdgeSlot) -> bool:
        lvl = len(self.levels)
        exr = self.exch_of(s.nbr, K_RDY2, lvl, 0)
        rrr = exr.ready_round()
        if rrr is None or rrr > self.rnd:
            if rrr is not None:
                self._need.append(rrr)
            return False
        key = (s.nbr, K_USED, lvl, 0)
        ex = self.slots[s.nbr].exch.get(key)
        if ex is None or ex.self_arr is None:
            bits = self._side_used(s)
            if bits is None:
                return False
            W = self.bottom["target"]
            ex = self._submit(s.nbr, K_USED, lvl, 0, self._bitmap_fields(bits, W))
            s.R[("used",)] = bits
            return True
        rr = ex.ready_round()
        floor = 0
        if self.paced:
            slot_w = self._n_chunks(self._payload_shape(K_USED, lvl, 0)) + 2
            floor = rrr + s.phi_bot * slot_w
        if rr is None:
            return False
        due = max(rr, floor)
        if due > self.rnd:
            self._need.append(due)
            return False
        union = s.R[("used",)] | self._bitmap_from(ex.other_values())
        k = 1
        while (union >> (k - 1)) & 1:
            k += 1
        s.final = k
        color = k
        for i, psi in enumerate(s.hist):
            color += (psi - 1) * self.suffix[i + 1]
        s.color = color
        s.tele["final"] = [due, k, color]
        return True


# -- wrappers -----------------------------------------------------------------


def _edge_rank(g: Graph) -> Dict[Tuple[int, int], int]:
    return {e: i + 1 for i, e in enumerate(g.edges())}


def _merge_edge_outputs(g: Graph, report: SimReport, palette: int) -> EdgeColoring:
    colors: Dict[Tuple[int, int], int] = {}
    for u, w in g.edges():
        cu = report.outputs[u][w]
        cw = report.outputs[w][u]
        assert cu == cw, f"endpoints disagree on edge ({u},{w}): {cu} vs {cw}"
        colors[(u, w)] = cu
    return EdgeColoring(colors, palette, 0)


def edge_color_direct(
    g: Graph,
    params: LegalParams,
    msg_mode: str = "short",
    paced: bool = False,
    budget_factor: int = 1,
    round_cap: int = 200_000,
) -> Tuple[EdgeColoring, SimReport]:
    """Legal edge coloring via the edge-specialized recursion; short messages."""
    Lambda0 = max(2 * (g.delta - 1), 1)
    params.validate(Lambda0)
    schedule = recursion_schedule(params, Lambda0)
    # paced runs reserve one slot per phi value, so a level-independent phi
    # palette makes the per-level round cost uniform
    levels, bottom = edge_level_plans(schedule, params, g.m, uniform_pprime=paced)
    suffix = _suffix(levels, bottom["target"])
    budget = budget_factor * ceil_log2(max(g.id_bound, 2))
    run_params = {
        "levels": levels,
        "bottom": bottom,
        "suffix": suffix,
        "rank": _edge_rank(g),
        "short": msg_mode == "short",
        "paced": paced,
        "budget_bits": budget,
    }
    report = run(
        g,
        EdgeColorProgram,
        msg_mode=msg_mode,
        round_cap=round_cap,
        params=run_params,
        budget_factor=budget_factor,
    )
    col = _merge_edge_outputs(g, report, suffix[0])
    _assert_endpoint_consistency(g, report)
    report.extra["vartheta"] = suffix[0]
    report.extra["level_lambdas"] = list(schedule)
    report.flags.append("setup: edge Ids assigned by global dense rank")
    return col, report


def _assert_endpoint_consistency(g: Graph, report: SimReport):
    """Both endpoints of every edge recorded identical (round, value) pairs for
    every per-level phi and psi decision."""
    for u, w in g.edges():
        tu = report.telemetry[u]["edges"][w]
        tw = report.telemetry[w]["edges"][u]
        assert tu["phi"] == tw["phi"], f"phi history differs on ({u},{w})"
        assert tu["psi"] == tw["psi"], f"psi history differs on ({u},{w})"
        assert tu.get("final") == tw.get("final"), f"final differs on ({u},{w})"


def edge_color_2delta_minus_1(g: Graph) -> Tuple[EdgeColoring, SimReport]:
    """Legal edge coloring with palette <= 2*delta-1 (bottom stage only)."""
    if g.m == 0:
        return EdgeColoring({}, 1, 0), SimReport(0, 0, 0, {})
    hat = max(2 * (g.delta - 1), 0)  # incident-degree bound of the edge set
    plans = linial_schedule(g.m, max(hat, 1))
    bottom = {
        "Lambda": hat,
        "target": hat + 1,
        "lin_plans": plans,
        "start_palette": g.m,
    }
    run_params = {
        "levels": [],
        "bottom": bottom,
        "suffix": [bottom["target"]],
        "rank": _edge_rank(g),
        "short": False,
        "paced": False,
    }
    report = run(g, EdgeColorProgram, msg_mode="wide", params=run_params)
    col = _merge_edge_outputs(g, report, bottom["target"])
    return col, report


def edge_color_via_line_graph(
    g: Graph,
    params: LegalParams,
    phi_mode: str = "fast",
    round_cap: int = 100_000,
) -> Tuple[EdgeColoring, SimReport]:
    """Vertex-color the line graph through the host simulation; the induced
    edge coloring inherits its palette bound."""
    from .legal import RecursiveColorProgram, _level_plans, _suffix_widths
    from .params import vartheta_of_schedule
    from .sim import run_on_line_graph

    lgm = build_line_graph(g)
    lg = lgm.lg
    Lambda0 = max(lg.delta, 1)
    params.validate(Lambda0)
    schedule = recursion_schedule(params, Lambda0)
    levels, bottom = _level_plans(phi_mode, schedule, params, max(lg.id_bound, 1))
    suffix = _suffix_widths(levels, bottom["target"])
    report = run_on_line_graph(
        g,
        RecursiveColorProgram,
        round_cap=round_cap,
        params={
            "levels": levels,
            "bottom": bottom,
            "suffix": suffix,
            "single_level": False,
        },
        lgm=lgm,
    )
    colors = {lgm.edge_of[v]: out["color"] for v, out in report.outputs.items()}
    vartheta = vartheta_of_schedule(schedule, params.p)
    col = EdgeColoring(colors, vartheta, 0)
    report.extra["vartheta"] = vartheta
    report.extra["level_lambdas"] = list(schedule)
    return col, report
