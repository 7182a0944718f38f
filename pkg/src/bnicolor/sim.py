"""Deterministic synchronous round executor for per-vertex programs.

Model: messages sent in round r are delivered at the start of round r+1; a
vertex is stepped in round 1 and afterwards whenever its inbox is non-empty.
The reported round count is the last round in which any vertex sent a message
(0 for an all-silent program). A vertex halts by assigning `self.output`; its
inbox keeps receiving (neighbors may not know yet) but it is never stepped
again.

Message bit accounting: a message is a sequence of (value, domain) integer
fields and costs sum(ceil(log2(domain))) bits. In `short` mode each (edge,
direction, round) carries at most one message and rounds exceeding the log-n
budget are flagged (never rejected); `wide` mode allows multiplexing and
reports the maximum count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .graph import Graph, LineGraphMap, build_line_graph
from .numbers import ceil_log2


class SimError(RuntimeError):
    def __init__(self, msg: str, partial: "SimReport" = None):
        super().__init__(msg)
        self.partial = partial


class RoundCapExceeded(SimError):
    pass


class DeadlockError(SimError):
    pass


class LocalityViolation(SimError):
    pass


class Message:
    __slots__ = ("fields", "bits")

    def __init__(self, *fields: Tuple[int, int]):
        for value, domain in fields:
            if domain < 1 or not (0 <= value < domain):
                raise ValueError(f"field value {value} outside domain {domain}")
        self.fields = fields
        self.bits = sum(ceil_log2(domain) for _, domain in fields)

    def __repr__(self):
        return f"Message({', '.join(str(f) for f in self.fields)})"


@dataclass
class Context:
    vid: int
    neighbors: Tuple[int, ...]
    n: int  # Id-space bound (= n for freshly built graphs)
    delta: int
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    @property
    def degree(self) -> int:
        return len(self.neighbors)


class VertexProgram:
    """Base class: subclass and implement step(round_no, inbox) -> outbox.

    inbox is a list of (sender Id, Message); outbox maps neighbor Id to a
    Message (short mode) or a list of Messages (wide mode). Set self.output
    to halt.
    """

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.output: Optional[Any] = None
        self.telemetry: Dict[str, Any] = {}
        # set to a future round number to be stepped then even with an empty inbox
        self.wake: Optional[int] = None

    def step(self, round_no: int, inbox: List[Tuple[int, "Message"]]):
        raise NotImplementedError


@dataclass
class SimReport:
    rounds: int
    max_msg_bits: int
    msgs_per_edge_round: int
    outputs: Dict[int, Any]
    flags: List[str] = field(default_factory=list)
    telemetry: Dict[int, Dict[str, Any]] = field(default_factory=dict)
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "rounds": self.rounds,
            "max_msg_bits": self.max_msg_bits,
            "msgs_per_edge_round": self.msgs_per_edge_round,
            "outputs": {str(v): out for v, out in sorted(self.outputs.items())},
            "flags": list(self.flags),
            "extra": self.extra,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


DEFAULT_ROUND_CAP = 100_000
MAX_FLAGS = 50


def run(
    g: Graph,
    program: Callable[[Context], VertexProgram],
    msg_mode: str = "wide",
    round_cap: int = DEFAULT_ROUND_CAP,
    params: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    budget_factor: int = 1,
    record_transcript: bool = False,
) -> SimReport:
    """Execute `program` on every vertex of g until all halt.

    Raises RoundCapExceeded / DeadlockError with a partial report attached,
    and LocalityViolation if a program addresses a non-neighbor.
    """
    if msg_mode not in ("short", "wide"):
        raise ValueError(f"unknown msg_mode {msg_mode!r}")
    if round_cap <= 0:
        raise ValueError("round_cap must be positive")
    params = dict(params or {})
    budget = budget_factor * ceil_log2(max(g.id_bound, 2))
    insts: Dict[int, VertexProgram] = {}
    for v in g.vertices:
        insts[v] = program(Context(v, g.adj[v], g.id_bound, g.delta, params, seed))

    inboxes: Dict[int, List[Tuple[int, Message]]] = {v: [] for v in g.vertices}
    halted: Dict[int, int] = {}
    to_step = list(g.vertices)
    rounds_done = 0
    max_bits = 0
    max_mux = 0
    flags: List[str] = []
    flag_overflow = 0
    transcript: List[Tuple[int, int, int, int]] = []
    round_no = 0

    def partial_report() -> SimReport:
        return _report(rounds_done, max_bits, max_mux, insts, halted, flags, flag_overflow)

    while True:
        round_no += 1
        if round_no > round_cap:
            raise RoundCapExceeded(
                f"round cap {round_cap} exceeded with {len(g.vertices) - len(halted)} "
                "vertices unhalted",
                partial_report(),
            )
        acted = False
        outgoing: Dict[int, List[Tuple[int, Message]]] = {}
        for v in to_step:
            inbox = inboxes[v]
            inboxes[v] = []
            if insts[v].wake is not None and insts[v].wake <= round_no:
                insts[v].wake = None
            out = insts[v].step(round_no, inbox) or {}
            for dst, msgs in out.items():
                if not g.has_edge(v, dst):
                    raise LocalityViolation(
                        f"vertex {v} sent to non-neighbor {dst} in round {round_no}",
                        partial_report(),
                    )
                batch = msgs if isinstance(msgs, list) else [msgs]
                if not batch:
                    continue
                acted = True
                if msg_mode == "short" and len(batch) > 1:
                    raise SimError(
                        f"short mode allows one message per edge per round; "
                        f"vertex {v} sent {len(batch)} to {dst} in round {round_no}",
                        partial_report(),
                    )
                bits = sum(m.bits for m in batch)
                max_bits = max(max_bits, max(m.bits for m in batch))
                max_mux = max(max_mux, len(batch))
                if msg_mode == "short" and bits > budget:
                    if len(flags) < MAX_FLAGS:
                        flags.append(
                            f"round {round_no}: {bits}b message {v}->{dst} exceeds "
                            f"budget {budget}b"
                        )
                    else:
                        flag_overflow += 1
                if record_transcript:
                    transcript.append((round_no, v, dst, bits))
                outgoing.setdefault(dst, []).extend((v, m) for m in batch)
            if insts[v].output is not None and v not in halted:
                halted[v] = round_no
        if acted:
            rounds_done = round_no
        for dst, arrivals in outgoing.items():
            inboxes[dst].extend(arrivals)
        to_step = sorted(
            v
            for v in g.vertices
            if v not in halted
            and (
                inboxes[v]
                or (insts[v].wake is not None and insts[v].wake <= round_no + 1)
            )
        )
        if not to_step:
            if len(halted) == len(g.vertices):
                break
            # idle rounds are fine while some vertex has a future wake-up
            if any(
                insts[v].wake is not None
                for v in g.vertices
                if v not in halted
            ):
                continue
            raise DeadlockError(
                f"no messages in flight after round {round_no} but "
                f"{len(g.vertices) - len(halted)} vertices unhalted",
                partial_report(),
            )

    report = _report(rounds_done, max_bits, max_mux, insts, halted, flags, flag_overflow)
    if record_transcript:
        report.extra["transcript"] = transcript
    report.extra["budget_bits"] = budget
    report.extra["budget_violations"] = (
        sum(1 for f in flags if "exceeds budget" in f) + flag_overflow
    )
    return report


def _report(rounds, max_bits, max_mux, insts, halted, flags, flag_overflow) -> SimReport:
    rep = SimReport(
        rounds=rounds,
        max_msg_bits=max_bits,
        msgs_per_edge_round=max_mux,
        outputs={v: inst.output for v, inst in insts.items()},
        flags=list(flags),
        telemetry={v: inst.telemetry for v, inst in insts.items() if inst.telemetry},
    )
    if flag_overflow:
        rep.flags.append(f"... {flag_overflow} further budget flags suppressed")
    return rep


def run_on_line_graph(
    g: Graph,
    program: Callable[[Context], VertexProgram],
    round_cap: int = DEFAULT_ROUND_CAP,
    params: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    lgm: Optional[LineGraphMap] = None,
) -> SimReport:
    """Simulate a line-graph vertex program on the host graph (edge e=(u,w),
    Id(u)<Id(w), is simulated by u).

    The logical execution runs on L(g); host telemetry is derived by routing
    every logical message through the shared endpoint: one logical round costs
    two host rounds (owner -> shared endpoint, shared endpoint -> owner), plus
    2 setup rounds in which endpoints learn incident edge Ids. Host rounds =
    2T + 2. Host messages carry the logical payload plus a destination-edge
    Id field; per-host-edge multiplexing is counted and reported.
    """
    if lgm is None:
        lgm = build_line_graph(g)
    logical = run(
        lgm.lg,
        program,
        msg_mode="wide",
        round_cap=round_cap,
        params=params,
        seed=seed,
        record_transcript=True,
    )
    transcript = logical.extra.pop("transcript")
    m = max(lgm.lg.id_bound, 2)
    addr_bits = ceil_log2(m)

    def owner(eid: int) -> int:
        return min(lgm.edge_of[eid])

    # host load: (host round, directed host edge) -> message count
    load: Dict[Tuple[int, int, int], int] = {}
    host_max_bits = 0
    for rnd, src_e, dst_e, bits in transcript:
        su, sw = lgm.edge_of[src_e]
        du, dw = lgm.edge_of[dst_e]
        shared = ({su, sw} & {du, dw}).pop()
        host_max_bits = max(host_max_bits, bits + addr_bits)
        r1, r2 = 2 * rnd + 1, 2 * rnd + 2  # after the 2 setup rounds
        if owner(src_e) != shared:
            key = (r1, owner(src_e), shared)
            load[key] = load.get(key, 0) + 1
        if owner(dst_e) != shared:
            key = (r2, shared, owner(dst_e))
            load[key] = load.get(key, 0) + 1
    host_rounds = 2 * logical.rounds + 2
    mux = max(load.values(), default=0)
    # setup round: each vertex tells each neighbor all its incident edge Ids
    setup_mux = g.delta
    report = SimReport(
        rounds=host_rounds,
        max_msg_bits=max(host_max_bits, 2 * ceil_log2(max(g.id_bound, 2))),
        msgs_per_edge_round=max(mux, setup_mux),
        outputs=logical.outputs,
        flags=list(logical.flags) + ["setup: edge Ids assigned by global dense rank"],
        telemetry=logical.telemetry,
        extra=dict(logical.extra),
    )
    report.extra["logical_rounds"] = logical.rounds
    report.extra["host_mux_recolor"] = mux
    return report
