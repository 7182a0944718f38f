"""Coloring value types and their text serialization.

Text format: header line `palette P defect D`, then one line per item. Vertex
colorings use `id color`; edge colorings use the dense edge rank (lexicographic
rank of the (u, w) pair, u < w) as the id, matching line-graph vertex Ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .graph import Graph, GraphError


class ColoringError(ValueError):
    pass


@dataclass
class VertexColoring:
    colors: Dict[int, int]
    palette: int
    claimed_defect: int = 0

    def colors_used(self) -> int:
        return len(set(self.colors.values()))

    def classes(self) -> Dict[int, list]:
        out: Dict[int, list] = {}
        for v, k in sorted(self.colors.items()):
            out.setdefault(k, []).append(v)
        return out


@dataclass
class EdgeColoring:
    colors: Dict[Tuple[int, int], int]
    palette: int
    claimed_defect: int = 0

    def colors_used(self) -> int:
        return len(set(self.colors.values()))


def format_vertex_coloring(col: VertexColoring) -> str:
    lines = [f"palette {col.palette} defect {col.claimed_defect}"]
    lines.extend(f"{v} {k}" for v, k in sorted(col.colors.items()))
    return "\n".join(lines) + "\n"


def parse_vertex_coloring(text: str) -> VertexColoring:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ColoringError("empty coloring file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "palette" or head[2] != "defect":
        raise ColoringError("header must be 'palette P defect D'")
    palette, defect = int(head[1]), int(head[3])
    colors = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ColoringError(f"bad line: {ln!r}")
        v, k = int(parts[0]), int(parts[1])
        if v in colors:
            raise ColoringError(f"duplicate entry for {v}")
        colors[v] = k
    return VertexColoring(colors, palette, defect)


def format_edge_coloring(g: Graph, col: EdgeColoring) -> str:
    rank = {e: i + 1 for i, e in enumerate(g.edges())}
    missing = [e for e in rank if e not in col.colors]
    if missing:
        raise ColoringError(f"coloring misses edges: {missing[:5]}")
    lines = [f"palette {col.palette} defect {col.claimed_defect}"]
    lines.extend(f"{rank[e]} {col.colors[e]}" for e in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_coloring(g: Graph, text: str) -> EdgeColoring:
    vc = parse_vertex_coloring(text)
    edges = g.edges()
    colors = {}
    for eid, k in vc.colors.items():
        if not (1 <= eid <= len(edges)):
            raise ColoringError(f"edge id {eid} out of range 1..{len(edges)}")
        colors[edges[eid - 1]] = k
    return EdgeColoring(colors, vc.palette, vc.claimed_defect)
