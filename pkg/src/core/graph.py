"""Undirected simple graph used for competition graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Loopless undirected graph on 0..n-1.

    Equality is exact edge-set equality on the shared indexing; labels are ignored.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at {u} is not allowed in an undirected graph")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Iterable[str] | None = None
    ) -> "Graph":
        return cls(n, frozenset(edges), tuple(labels) if labels is not None else None)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def is_edgeless(self) -> bool:
        return not self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_edges(self, vertices: Iterable[int]) -> frozenset[tuple[int, int]]:
        keep = frozenset(vertices)
        return frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        return all(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])

    def to_networkx(self, vertices: Iterable[int] | None = None) -> nx.Graph:
        """networkx view, optionally restricted to the subgraph induced by ``vertices``."""
        g = nx.Graph()
        if vertices is None:
            g.add_nodes_from(range(self.n))
            g.add_edges_from(self.edges)
        else:
            keep = frozenset(vertices)
            g.add_nodes_from(sorted(keep))
            g.add_edges_from(self.induced_edges(keep))
        return g

    def edge_labels(self) -> list[list[str]]:
        """Edges as sorted label pairs."""
        pairs = [sorted((self.label(u), self.label(v))) for u, v in self.edges]
        return sorted(pairs)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_labels()})"
