"""Colored directed graph attached to a quasiperfect evolution algebra.

Vertex ``i`` has an edge to vertex ``j`` when ``omega[i][j]`` is nonzero;
the edge is black for a unit and blue for a nonunit.  Vertices are numbered
from 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .evalg import EvolutionAlgebra, require_quasiperfect


class Color(enum.Enum):
    BLACK = "black"
    BLUE = "blue"


@dataclass(frozen=True)
class ColoredDigraph:
    vertex_count: int
    edges: frozenset  # of (from, to, Color)

    def __post_init__(self):
        pairs = [(u, v) for u, v, _ in self.edges]
        if len(pairs) != len(set(pairs)):
            raise ValueError("at most one edge per ordered vertex pair")
        for u, v in pairs:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise ValueError(f"edge {u}->{v} leaves the vertex set")

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (e[0], e[1]))

    def count(self, color=None, loops=None):
        return sum(
            1
            for u, v, c in self.edges
            if (color is None or c is color) and (loops is None or (u == v) == loops)
        )


def graph_of(a: EvolutionAlgebra) -> ColoredDigraph:
    require_quasiperfect(a)
    edges = set()
    for i in range(a.dim):
        for j in range(a.dim):
            x = a.omega[i][j]
            if x.is_zero():
                continue
            edges.add((i + 1, j + 1, Color.BLACK if x.is_unit() else Color.BLUE))
    return ColoredDigraph(a.dim, frozenset(edges))


def digraph_isomorphic(g: ColoredDigraph, h: ColoredDigraph) -> bool:
    if g.vertex_count != h.vertex_count or len(g.edges) != len(h.edges):
        return False
    n = g.vertex_count
    for perm in itertools.permutations(range(1, n + 1)):
        image = frozenset((perm[u - 1], perm[v - 1], c) for u, v, c in g.edges)
        if image == h.edges:
            return True
    return False


def to_dot(g: ColoredDigraph, name: str = "evo") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in range(1, g.vertex_count + 1)]
    lines += [f"  {u} -> {v} [color={c.value}];" for u, v, c in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
