"""Predicted m-step competition graph structure for bipartite tournaments.

Acyclic instances get exact shapes for every m and exact (cindex, cperiod).
Cyclic instances are split by the sink elimination index ζ:
  ζ = 0   cindex <= 4, cperiod = 1
  ζ = 1   cindex <= 4, cperiod <= 2, parity cliques, two-step persistence
  ζ >= 2  cindex = ζ, cperiod = 1, exact shapes for every m >= 2
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from src.characterization.structure import Shape
from src.core.digraph import BipartiteTournament
from src.core.errors import NotAcyclic, NotCyclic
from src.sinks.sink_analysis import SinkAnalysis

ACYCLIC = "acyclic"
CYCLIC_ZETA0 = "cyclic-zeta0"
CYCLIC_ZETA1 = "cyclic-zeta1"
CYCLIC_ZETA2_PLUS = "cyclic-zeta>=2"


@dataclass(frozen=True)
class Bound:
    """An exact value or an upper bound."""

    value: int
    exact: bool

    def holds(self, actual: int) -> bool:
        return actual == self.value if self.exact else actual <= self.value

    def __str__(self) -> str:
        return f"= {self.value}" if self.exact else f"<= {self.value}"

    def to_dict(self) -> dict:
        return {"value": self.value, "exact": self.exact}


@dataclass(frozen=True)
class Prediction:
    applicability: str
    m: int
    cindex: Bound
    cperiod: Bound
    shape: Shape | None = None
    part_shapes: tuple[Shape, Shape] | None = None
    cliques: tuple[frozenset[int], ...] = ()
    isolated: frozenset[int] = field(default_factory=frozenset)
    two_step_persistence: bool = False

    def to_dict(self, label: Callable[[int], str] = str) -> dict:
        return {
            "applicability": self.applicability,
            "m": self.m,
            "shape": self.shape.label if self.shape is not None else None,
            "part_shapes": [s.label for s in self.part_shapes] if self.part_shapes else None,
            "cliques": [sorted(label(v) for v in c) for c in self.cliques],
            "isolated": sorted(label(v) for v in self.isolated),
            "cindex": str(self.cindex),
            "cperiod": str(self.cperiod),
        }


def _part_shapes(
    bt: BipartiteTournament, cliques: tuple[frozenset[int], ...], isolated: frozenset[int]
) -> tuple[Shape, Shape]:
    shapes = []
    for part in (bt.part1, bt.part2):
        sizes = [len(c) for c in cliques if c and c <= part]
        shapes.append(Shape.of(sizes, len(isolated & part)))
    return shapes[0], shapes[1]


def acyclic_cindex(a: SinkAnalysis) -> int:
    zeta = a.zeta
    if len(a.w_sets[zeta]) >= 2:
        return zeta + 1
    if zeta == 1 or len(a.w_sets[zeta - 1]) >= 2:
        return zeta
    return zeta - 1


def predict_acyclic(bt: BipartiteTournament, a: SinkAnalysis, m: int) -> Prediction:
    """Exact C^m shape plus exact cindex and cperiod = 1 for an acyclic instance.

    m > ζ   edgeless on all vertices
    m = ζ   K_{|W_ζ|} ∪ I_{|𝒲_m|}
    m < ζ   K_{|V1 ∖ 𝒲_m|} ∪ K_{|V2 ∖ 𝒲_m|} ∪ I_{|𝒲_m|}

    Raises:
        NotAcyclic: a has W_ζ = ∅.
    """
    if not a.acyclic:
        raise NotAcyclic()
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")

    zeta = a.zeta
    everything = frozenset(bt.digraph.vertices)
    if m > zeta:
        cliques: tuple[frozenset[int], ...] = ()
        isolated = everything
    elif m == zeta:
        cliques = (a.last,)
        isolated = a.eliminated_before(m)
    else:
        gone = a.eliminated_before(m)
        cliques = (bt.part1 - gone, bt.part2 - gone)
        isolated = gone

    return Prediction(
        applicability=ACYCLIC,
        m=m,
        cindex=Bound(acyclic_cindex(a), True),
        cperiod=Bound(1, True),
        shape=Shape.of((len(c) for c in cliques), len(isolated)),
        part_shapes=_part_shapes(bt, cliques, isolated),
        cliques=cliques,
        isolated=isolated,
    )


def predict_cyclic(bt: BipartiteTournament, a: SinkAnalysis, m: int) -> Prediction:
    """Structure claims for a bipartite tournament with a directed cycle, m >= 2.

    For every ζ each part-induced C^m is a disjoint union of cliques with at
    most two nontrivial, or two overlapping cliques once isolated vertices are
    removed; that claim is checked by the classifier, not encoded here.

    Raises:
        NotCyclic: a has W_ζ ≠ ∅.
    """
    if a.acyclic:
        raise NotCyclic()
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")

    zeta = a.zeta
    if zeta == 0:
        return Prediction(CYCLIC_ZETA0, m, cindex=Bound(4, False), cperiod=Bound(1, True))

    if zeta == 1:
        w0 = a.w_sets[0]
        sink_side = bt.part1 if w0 <= bt.part1 else bt.part2
        other_side = bt.part2 if sink_side is bt.part1 else bt.part1
        clique = other_side if m % 2 == 1 else sink_side - w0
        return Prediction(
            CYCLIC_ZETA1,
            m,
            cindex=Bound(4, False),
            cperiod=Bound(2, False),
            cliques=(clique,),
            isolated=w0,
            two_step_persistence=True,
        )

    if m >= zeta:
        core = a.terminal_vertices
        cliques = (bt.part1 & core, bt.part2 & core)
        isolated = frozenset(bt.digraph.vertices) - core
    else:
        gone = a.eliminated_before(m)
        cliques = (bt.part1 - gone, bt.part2 - gone)
        isolated = gone

    part_shapes = _part_shapes(bt, cliques, isolated)
    return Prediction(
        CYCLIC_ZETA2_PLUS,
        m,
        cindex=Bound(zeta, True),
        cperiod=Bound(1, True),
        shape=part_shapes[0].union(part_shapes[1]),
        part_shapes=part_shapes,
        cliques=cliques,
        isolated=isolated,
    )


def predict(bt: BipartiteTournament, a: SinkAnalysis, m: int) -> Prediction:
    """Dispatch on acyclicity; cyclic instances need m >= 2."""
    if a.acyclic:
        return predict_acyclic(bt, a, m)
    return predict_cyclic(bt, a, m)
