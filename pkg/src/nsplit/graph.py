"""Commuting graphs on vertex subsets of a group."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import Group


@dataclass(frozen=True)
class CommutingGraph:
    parent: Group
    vertex_ids: tuple[int, ...]
    adjacency: dict[int, tuple[int, ...]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.vertex_ids)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        for v in self.vertex_ids:
            for w in self.adjacency[v]:
                if v < w:
                    yield v, w

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2

    def is_independent(self, S) -> bool:
        s = set(S)
        return all(not (s.intersection(self.adjacency[v])) for v in s)


def build(G: Group, vertices) -> CommutingGraph:
    """Commuting graph on ``vertices``: x ~ y iff x != y and xy = yx."""
    verts = sorted(set(int(v) for v in vertices))
    if not verts:
        return CommutingGraph(G, (), {})
    inside = np.zeros(G.order, dtype=bool)
    inside[verts] = True
    if G.table is None and len(verts) > 64:
        cents = G.all_centralizers()
    else:
        cents = None
    adj = {}
    for v in verts:
        c = cents[v] if cents is not None else G.centralizer_of(v)
        nb = c[inside[c]]
        adj[v] = tuple(int(w) for w in nb if w != v)
    return CommutingGraph(G, tuple(verts), adj)


def components(graph: CommutingGraph) -> list[tuple[int, ...]]:
    """Connected components (sorted tuples), ordered by least vertex."""
    seen = set()
    out = []
    for v in graph.vertex_ids:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            x = stack.pop()
            for y in graph.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return out


def export_dot(graph: CommutingGraph, out=None) -> str:
    """Graphviz DOT text with vertices labelled by cycle notation.

    If ``out`` is a path or writable file object the text is also written.
    """
    G = graph.parent
    lines = ["graph {"]
    for v in graph.vertex_ids:
        lines.append(f'  v{v} [label="{G.cycle_string(v)}"];')
    for v, w in graph.edges():
        lines.append(f"  v{v} -- v{w};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
    return text
