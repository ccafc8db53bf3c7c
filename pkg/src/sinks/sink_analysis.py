"""Sink sequence, digraph sequence and sink elimination index ζ(D).

D_0 = D, W_i = sinks of D_i, D_{i+1} = D_i - W_i; stop at the first k with
W_k = V(D_k) or W_k = ∅, and set ζ = k.
"""

from __future__ import annotations

from dataclasses import dataclass

from src.core.digraph import BipartiteTournament, Digraph, m_step_prey_set
from src.core.errors import EmptyDigraph, ZetaZero


@dataclass(frozen=True)
class SinkAnalysis:
    digraph: Digraph
    zeta: int
    w_sets: tuple[frozenset[int], ...]
    survivor_vertices: tuple[frozenset[int], ...]

    @property
    def acyclic(self) -> bool:
        return is_acyclic_via_sinks(self)

    @property
    def last(self) -> frozenset[int]:
        """W_ζ."""
        return self.w_sets[self.zeta]

    @property
    def terminal_vertices(self) -> frozenset[int]:
        """V(D_ζ)."""
        return self.survivor_vertices[self.zeta]

    @property
    def stopping_note(self) -> str | None:
        """非巡回のとき、W_ζ = V(D_ζ) で停止した旨の注記を返す。

        Counting the empty W_{ζ+1} as one more level would give ζ+1; the
        recursion stops one level earlier. Cyclic instances get None.
        """
        if not self.acyclic:
            return None
        z = self.zeta
        return (
            f"note: the stopping rule halts at W_{z} = V(D_{z}), so zeta = {z}; "
            f"a count that also takes W_{z + 1} = (empty) as a level gives zeta = {z + 1}"
        )

    def eliminated_before(self, k: int) -> frozenset[int]:
        """𝒲_k = W_0 ∪ ... ∪ W_{k-1}; k is clamped to ζ+1."""
        k = max(0, min(k, self.zeta + 1))
        return frozenset().union(*self.w_sets[:k])

    def level_of(self, v: int) -> int | None:
        """Index i with v ∈ W_i, or None when v survives in D_ζ without being a sink there."""
        for i, w in enumerate(self.w_sets):
            if v in w:
                return i
        return None

    def digraph_at(self, i: int) -> Digraph:
        """D_i as an induced subdigraph (global indexing kept)."""
        return self.digraph.induced(self.survivor_vertices[i])

    def to_dict(self) -> dict:
        d = self.digraph
        return {
            "zeta": self.zeta,
            "W": [sorted(d.label(v) for v in w) for w in self.w_sets],
            "acyclic": self.acyclic,
        }


@dataclass(frozen=True)
class ParityReport:
    """Where the even- and odd-indexed sink sets live in a bipartite tournament."""

    even_part: int | None
    odd_part: int | None
    straddling: tuple[int, ...]
    mixed_parity: bool
    even_union: frozenset[int]
    odd_union: frozenset[int]
    unions_equal_parts: bool
    acyclic: bool

    @property
    def consistent(self) -> bool:
        """No W_i straddles, parities sit in different parts, equality iff acyclic."""
        if self.straddling or self.mixed_parity:
            return False
        if self.even_part is not None and self.even_part == self.odd_part:
            return False
        return self.unions_equal_parts == self.acyclic

    def to_dict(self) -> dict:
        return {
            "even_part": self.even_part,
            "odd_part": self.odd_part,
            "straddling": list(self.straddling),
            "mixed_parity": self.mixed_parity,
            "even_union": sorted(self.even_union),
            "odd_union": sorted(self.odd_union),
            "unions_equal_parts": self.unions_equal_parts,
            "acyclic": self.acyclic,
            "consistent": self.consistent,
        }


def sinks(d: Digraph) -> frozenset[int]:
    """Vertices of outdegree zero."""
    return frozenset(v for v in d.vertices if not d.out_neighbors(v))


def sink_analysis(d: Digraph) -> SinkAnalysis:
    """Run the sink elimination recursion.

    Raises:
        EmptyDigraph: d has no vertices.
    """
    if d.n == 0:
        raise EmptyDigraph()

    survivors = frozenset(d.vertices)
    w_sets: list[frozenset[int]] = []
    survivor_sets: list[frozenset[int]] = []
    while True:
        w = frozenset(v for v in survivors if not (d.out_neighbors(v) & survivors))
        w_sets.append(w)
        survivor_sets.append(survivors)
        if w == survivors or not w:
            break
        survivors = survivors - w

    return SinkAnalysis(d, len(w_sets) - 1, tuple(w_sets), tuple(survivor_sets))


def is_acyclic_via_sinks(a: SinkAnalysis) -> bool:
    """Acyclic iff W_ζ ≠ ∅."""
    return bool(a.w_sets[a.zeta])


def check_parity_partition(bt: BipartiteTournament, a: SinkAnalysis) -> ParityReport:
    """Report which part hosts the even- and odd-indexed sink sets.

    Empty sets (only W_ζ of a cyclic instance) are ignored when locating parts.

    Raises:
        ZetaZero: ζ = 0.
    """
    if a.zeta == 0:
        raise ZetaZero()

    hosts: dict[int, set[int]] = {0: set(), 1: set()}
    straddling = []
    for i, w in enumerate(a.w_sets):
        if not w:
            continue
        if w <= bt.part1:
            hosts[i % 2].add(1)
        elif w <= bt.part2:
            hosts[i % 2].add(2)
        else:
            straddling.append(i)

    def single(parity: int) -> int | None:
        found = hosts[parity]
        return next(iter(found)) if len(found) == 1 else None

    even_part, odd_part = single(0), single(1)
    mixed = len(hosts[0]) > 1 or len(hosts[1]) > 1

    even_union = frozenset().union(*a.w_sets[0::2])
    odd_union = frozenset().union(*a.w_sets[1::2])
    equal = (
        even_part is not None
        and odd_part is not None
        and even_part != odd_part
        and even_union == bt.part(even_part)
        and odd_union == bt.part(odd_part)
    )
    return ParityReport(
        even_part=even_part,
        odd_part=odd_part,
        straddling=tuple(straddling),
        mixed_parity=mixed,
        even_union=even_union,
        odd_union=odd_union,
        unions_equal_parts=equal,
        acyclic=is_acyclic_via_sinks(a),
    )


def max_walk_length_from(d: Digraph, source: int, cap: int) -> int:
    """Largest L <= cap with a length-L walk from source; cap+1 if walks extend beyond cap."""
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    best = 0
    for length in range(cap + 1):
        if m_step_prey_set(d, source, length):
            best = length
        else:
            return best
    if m_step_prey_set(d, source, cap + 1):
        return cap + 1
    return best


def level_arc_violations(bt: BipartiteTournament, a: SinkAnalysis) -> list[tuple[int, int]]:
    """Missing arcs among sink levels.

    For s < t with t - s odd and t < ζ (t = ζ allowed when acyclic), every
    vertex of W_t must have an arc to every vertex of W_s. Returns the
    (u, v) pairs where that arc is absent.
    """
    d = bt.digraph
    top = a.zeta if is_acyclic_via_sinks(a) else a.zeta - 1
    missing = []
    for t in range(1, top + 1):
        for s in range(t - 1, -1, -2):
            for u in sorted(a.w_sets[t]):
                for v in sorted(a.w_sets[s]):
                    if not d.has_arc(u, v):
                        missing.append((u, v))
    return missing


def out_neighbor_clause_violations(bt: BipartiteTournament, a: SinkAnalysis) -> list[tuple[int, int]]:
    """Missing arcs for the part-versus-level clauses.

    With W_0 inside part S and the other part T: each vertex of W_{2k+1}
    (k = 0..⌊ζ/2⌋-1) is an out-neighbour of every vertex of S ∖ 𝒲_{2k+1},
    and each vertex of W_{2k} (k = 1..⌈ζ/2⌉-1) is an out-neighbour of every
    vertex of T ∖ 𝒲_{2k}. Returns missing (u, v) arcs.
    """
    if a.zeta == 0 or not a.w_sets[0]:
        return []
    d = bt.digraph
    sink_side = bt.part1 if a.w_sets[0] <= bt.part1 else bt.part2
    other_side = bt.part2 if sink_side is bt.part1 else bt.part1
    missing = []
    for k in range(0, a.zeta // 2):
        level = 2 * k + 1
        for u in sorted(sink_side - a.eliminated_before(level)):
            for v in sorted(a.w_sets[level]):
                if not d.has_arc(u, v):
                    missing.append((u, v))
    for k in range(1, (a.zeta + 1) // 2):
        level = 2 * k
        for u in sorted(other_side - a.eliminated_before(level)):
            for v in sorted(a.w_sets[level]):
                if not d.has_arc(u, v):
                    missing.append((u, v))
    return missing


def descending_path_violations(
    bt: BipartiteTournament, a: SinkAnalysis, limit: int = 4096
) -> list[tuple[int, ...]]:
    """Level-descending selections v_l ∈ W_l, ..., v_0 ∈ W_0 (1 <= l < ζ) lacking the path v_l → ... → v_0.

    Consecutive levels are checked arc by arc, which covers every selection;
    ``limit`` caps the number of reported witnesses.
    """
    d = bt.digraph
    bad: list[tuple[int, ...]] = []
    for i in range(1, a.zeta):
        for u in sorted(a.w_sets[i]):
            for v in sorted(a.w_sets[i - 1]):
                if not d.has_arc(u, v):
                    bad.append((u, v))
                    if len(bad) >= limit:
                        return bad
    return bad
