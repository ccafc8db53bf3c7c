"""Structure classification of part-induced competition graphs.

Shapes considered, most specific first:
  Edgeless                 no edges
  CliquesPlusIsolated      every component is complete (K_a ∪ K_b ∪ ... ∪ I_c)
  TwoOverlappingCliques    non-isolated vertices = (X ∪ Z) ∪ (Y ∪ Z), both cliques,
                           no X-Y edge, Z nonempty
  Irregular                anything else
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from src.core.graph import Graph

EDGELESS = "Edgeless"
CLIQUES_PLUS_ISOLATED = "CliquesPlusIsolated"
TWO_OVERLAPPING_CLIQUES = "TwoOverlappingCliques"
IRREGULAR = "Irregular"


@dataclass(frozen=True, order=True)
class Shape:
    """K_{a1} ∪ K_{a2} ∪ ... ∪ I_c up to isomorphism.

    ``cliques`` holds nontrivial sizes (>= 2) in descending order; K_1 and K_0
    are folded into ``isolated``.
    """

    cliques: tuple[int, ...]
    isolated: int

    @classmethod
    def of(cls, sizes: Iterable[int], isolated: int = 0) -> "Shape":
        nontrivial = []
        for s in sizes:
            if s >= 2:
                nontrivial.append(s)
            elif s == 1:
                isolated += 1
        return cls(tuple(sorted(nontrivial, reverse=True)), isolated)

    @property
    def size(self) -> int:
        return sum(self.cliques) + self.isolated

    @property
    def is_edgeless(self) -> bool:
        return not self.cliques

    def union(self, other: "Shape") -> "Shape":
        return Shape.of(self.cliques + other.cliques, self.isolated + other.isolated)

    @property
    def label(self) -> str:
        terms = [f"K{s}" for s in self.cliques]
        if self.isolated or not terms:
            terms.append(f"I{self.isolated}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class StructureSummary:
    kind: str
    clique_sizes: tuple[int, ...] = ()
    isolated: int = 0
    overlap: int = 0
    cover: tuple[frozenset[int], frozenset[int]] | None = None

    @property
    def nontrivial(self) -> int:
        return len(self.clique_sizes)

    @property
    def shape(self) -> Shape | None:
        """Disjoint-clique shape, or None for the overlapping and irregular kinds."""
        if self.kind in (EDGELESS, CLIQUES_PLUS_ISOLATED):
            return Shape(self.clique_sizes, self.isolated)
        return None

    @property
    def label(self) -> str:
        if self.kind == IRREGULAR:
            return "irregular"
        if self.kind == TWO_OVERLAPPING_CLIQUES:
            a, b = self.clique_sizes
            tail = f"+I{self.isolated}" if self.isolated else ""
            return f"(K{a}&K{b}:{self.overlap}){tail}"
        return Shape(self.clique_sizes, self.isolated).label

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "label": self.label,
            "clique_sizes": list(self.clique_sizes),
            "isolated": self.isolated,
        }
        if self.kind == TWO_OVERLAPPING_CLIQUES:
            out["overlap"] = self.overlap
            out["cover"] = [sorted(c) for c in self.cover]
        return out


def _is_complete(h: nx.Graph) -> bool:
    k = h.number_of_nodes()
    return h.number_of_edges() == k * (k - 1) // 2


def _two_clique_cover(h: nx.Graph) -> tuple[frozenset[int], frozenset[int], frozenset[int]] | None:
    """(X, Y, Z) with h = clique(X ∪ Z) ∪ clique(Y ∪ Z), no X-Y edges, X, Y nonempty.

    h has no isolated vertices. Z is the set of vertices adjacent to all others;
    the complement on the rest must be complete bipartite between X and Y.
    """
    k = h.number_of_nodes()
    z = frozenset(v for v in h if h.degree(v) == k - 1)
    rest = [v for v in h if v not in z]
    if len(rest) < 2:
        return None
    comp = nx.complement(h.subgraph(rest))
    if not nx.is_connected(comp) or not nx.is_bipartite(comp):
        return None
    x, y = nx.bipartite.sets(comp)
    if comp.number_of_edges() != len(x) * len(y):
        return None
    return frozenset(x), frozenset(y), z


def classify_structure(g: Graph, part: Iterable[int]) -> StructureSummary:
    """Classify the subgraph of g induced by ``part``."""
    vertices = frozenset(part)
    h = g.to_networkx(vertices)
    if h.number_of_edges() == 0:
        return StructureSummary(EDGELESS, (), len(vertices))

    components = [h.subgraph(c) for c in nx.connected_components(h)]
    isolated = sum(1 for c in components if c.number_of_nodes() == 1)
    if all(_is_complete(c) for c in components):
        sizes = sorted((c.number_of_nodes() for c in components if c.number_of_nodes() > 1), reverse=True)
        return StructureSummary(CLIQUES_PLUS_ISOLATED, tuple(sizes), isolated)

    core = h.subgraph(v for v in h if h.degree(v) > 0)
    found = _two_clique_cover(nx.Graph(core))
    if found is None:
        return StructureSummary(IRREGULAR, (), isolated)

    x, y, z = found
    first, second = x | z, y | z
    if min(second) < min(first):
        first, second = second, first
    return StructureSummary(
        TWO_OVERLAPPING_CLIQUES,
        (len(first), len(second)),
        isolated,
        overlap=len(z),
        cover=(first, second),
    )


def graph_structure(g: Graph) -> StructureSummary:
    """classify_structure over every vertex of g."""
    return classify_structure(g, range(g.n))
