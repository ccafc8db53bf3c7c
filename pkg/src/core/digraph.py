"""Digraph and bipartite tournament types.

Vertices are dense indices 0..n-1; labels are presentation only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from src.core.errors import (
    DoubleArc,
    InvalidPartition,
    MissingArc,
    SamePartArc,
    SelfLoop,
)


@dataclass(frozen=True)
class Digraph:
    """Immutable directed graph on vertices 0..n-1.

    ``allow_loops`` is only set for power digraphs, where a vertex on a closed
    walk of length m is its own m-step prey.
    """

    n: int
    arcs: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    allow_loops: bool = False
    _out: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out: list[set[int]] = [set() for _ in range(self.n)]
        inn: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={self.n}")
            if u == v and not self.allow_loops:
                raise SelfLoop(self._label_of(u))
            out[u].add(v)
            inn[v].add(u)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_out", tuple(frozenset(s) for s in out))
        object.__setattr__(self, "_in", tuple(frozenset(s) for s in inn))

    def _label_of(self, v: int) -> str:
        if self.labels is not None and 0 <= v < len(self.labels):
            return self.labels[v]
        return str(v)

    @classmethod
    def from_arcs(
        cls, n: int, arcs: Iterable[tuple[int, int]], labels: Iterable[str] | None = None
    ) -> "Digraph":
        return cls(n, frozenset(arcs), tuple(labels) if labels is not None else None)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def label(self, v: int) -> str:
        return self._label_of(v)

    def index_of(self, label: str) -> int:
        for v in range(self.n):
            if self.label(v) == label:
                return v
        raise KeyError(label)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._out[u]

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Induced subdigraph on ``vertices``, keeping the global indexing.

        Vertices outside the set stay in range but carry no arcs.
        """
        keep = frozenset(vertices)
        arcs = frozenset((u, v) for u, v in self.arcs if u in keep and v in keep)
        return Digraph(self.n, arcs, self.labels, self.allow_loops)

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arcs)
        return g


@dataclass(frozen=True)
class BipartiteTournament:
    """A digraph plus a validated bipartition; every cross pair has exactly one arc."""

    digraph: Digraph
    part1: frozenset[int]
    part2: frozenset[int]

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def n1(self) -> int:
        return len(self.part1)

    @property
    def n2(self) -> int:
        return len(self.part2)

    def part_of(self, v: int) -> int:
        return 1 if v in self.part1 else 2

    def part(self, i: int) -> frozenset[int]:
        if i == 1:
            return self.part1
        if i == 2:
            return self.part2
        raise ValueError(f"part index must be 1 or 2, got {i}")

    def cross_pairs(self) -> Iterator[tuple[int, int]]:
        """Cross pairs sorted by (part1 index, part2 index)."""
        for u in sorted(self.part1):
            for v in sorted(self.part2):
                yield u, v

    def orientation_mask(self) -> int:
        """Bitmask over sorted cross pairs, bit=1 meaning the arc goes part1 → part2."""
        mask = 0
        for k, (u, v) in enumerate(self.cross_pairs()):
            if self.digraph.has_arc(u, v):
                mask |= 1 << k
        return mask

    @classmethod
    def from_orientation(
        cls,
        n1: int,
        n2: int,
        mask: int,
        labels: Iterable[str] | None = None,
    ) -> "BipartiteTournament":
        """Build the orientation encoded by ``mask``; part1 = 0..n1-1, part2 = n1..n1+n2-1.

        Valid by construction, so no validation pass is made.
        """
        if labels is None:
            labels = default_bipartite_labels(n1, n2)
        arcs = []
        k = 0
        for i in range(n1):
            for j in range(n1, n1 + n2):
                if (mask >> k) & 1:
                    arcs.append((i, j))
                else:
                    arcs.append((j, i))
                k += 1
        d = Digraph(n1 + n2, frozenset(arcs), tuple(labels))
        return cls(d, frozenset(range(n1)), frozenset(range(n1, n1 + n2)))


def default_bipartite_labels(n1: int, n2: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n1)) + tuple(f"y{j + 1}" for j in range(n2))


def validate_bipartite_tournament(
    d: Digraph, part1: Iterable[int], part2: Iterable[int]
) -> BipartiteTournament:
    """Check that (part1, part2) is a bipartition under which d is a bipartite tournament.

    Cross pairs are checked first in (part1, part2) index order, then arcs in
    sorted order for same-part violations; the first violation is raised.

    Raises:
        InvalidPartition: parts overlap or do not cover the vertex set.
        MissingArc / DoubleArc: a cross pair has zero or two arcs.
        SamePartArc: an arc stays inside a part.
    """
    p1 = frozenset(part1)
    p2 = frozenset(part2)
    if p1 & p2:
        raise InvalidPartition(f"overlap {sorted(d.label(v) for v in p1 & p2)}")
    if (p1 | p2) != frozenset(range(d.n)):
        missing = sorted(frozenset(range(d.n)) - (p1 | p2))
        raise InvalidPartition(f"uncovered {[d.label(v) for v in missing]}")

    for u in sorted(p1):
        for v in sorted(p2):
            forward = d.has_arc(u, v)
            backward = d.has_arc(v, u)
            if forward and backward:
                raise DoubleArc(d.label(u), d.label(v))
            if not forward and not backward:
                raise MissingArc(d.label(u), d.label(v))

    for u, v in d.sorted_arcs():
        if (u in p1) == (v in p1):
            raise SamePartArc(d.label(u), d.label(v))

    return BipartiteTournament(d, p1, p2)


def m_step_prey_set(d: Digraph, source: int, m: int) -> frozenset[int]:
    """Endpoints of length-m directed walks from ``source``.

    Computed by iterated out-neighbourhood expansion, independent of the
    matrix route, so it serves as the reference oracle.
    """
    if m < 0:
        raise ValueError(f"walk length must be >= 0, got {m}")
    frontier = frozenset((source,))
    for _ in range(m):
        if not frontier:
            break
        frontier = frozenset().union(*(d.out_neighbors(v) for v in frontier))
    return frontier


def has_directed_cycle(d: Digraph) -> bool:
    """True iff d contains a directed cycle (DFS via networkx)."""
    if any(u == v for u, v in d.arcs):
        return True
    return not nx.is_directed_acyclic_graph(d.to_networkx())


def find_directed_cycle(d: Digraph) -> list[tuple[int, int]]:
    """Arcs of one directed cycle, or [] when d is acyclic."""
    try:
        return [(u, v) for u, v, *_ in nx.find_cycle(d.to_networkx(), orientation="original")]
    except nx.NetworkXNoCycle:
        return []
