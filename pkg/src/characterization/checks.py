"""Checks: 1 つの二部トーナメントに対する構造チェック群。

各チェックは事前計算済みの InstanceEvidence を受け取り CheckResult を返す。
失敗は例外にしない。グループ単位で選択できる:
  sinks             sink sequence structure and walk bounds
  competition       matrix/oracle agreement, edge monotonicity, profile self-consistency
  characterization  predicted shapes, clique structure, (cindex, cperiod)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from src.characterization.prediction import predict_acyclic, predict_cyclic
from src.characterization.structure import (
    CLIQUES_PLUS_ISOLATED,
    IRREGULAR,
    classify_structure,
    graph_structure,
)
from src.competition.engine import competition_graph_sequence, m_step_competition_graph_oracle
from src.competition.profile import CompetitionProfile
from src.core.digraph import BipartiteTournament, find_directed_cycle, has_directed_cycle
from src.core.graph import Graph
from src.sinks.sink_analysis import (
    SinkAnalysis,
    check_parity_partition,
    descending_path_violations,
    level_arc_violations,
    max_walk_length_from,
    out_neighbor_clause_violations,
    sinks,
)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witness: dict | None = None

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass(frozen=True)
class InstanceEvidence:
    """Everything the checks look at, computed once per instance.

    ``graphs`` is C^1..C^horizon from the matrix route.
    """

    bt: BipartiteTournament
    analysis: SinkAnalysis
    profile: CompetitionProfile
    graphs: tuple[Graph, ...]
    m_max: int

    @property
    def horizon(self) -> int:
        return len(self.graphs)

    def graph(self, m: int) -> Graph:
        return self.graphs[m - 1]

    def labels(self, vertices) -> list[str]:
        d = self.bt.digraph
        return sorted(d.label(v) for v in vertices)

    def pairs(self, pairs) -> list[list[str]]:
        d = self.bt.digraph
        return [[d.label(u), d.label(v)] for u, v in pairs]


def _ok(name: str) -> CheckResult:
    return CheckResult(name, PASS)


def _fail(name: str, witness: dict) -> CheckResult:
    return CheckResult(name, FAIL, witness)


def _skip(name: str, reason: str) -> CheckResult:
    return CheckResult(name, SKIP, {"reason": reason})


# ─── sinks ───────────────────────────────────────────────


def check_sink_recursion(ev: InstanceEvidence) -> CheckResult:
    name = "sink sets are the sinks of each residual digraph"
    a, d = ev.analysis, ev.bt.digraph
    for i in range(a.zeta + 1):
        alive = a.survivor_vertices[i]
        expected = sinks(d.induced(alive)) & alive
        if a.w_sets[i] != expected:
            return _fail(name, {"level": i, "expected": ev.labels(expected), "got": ev.labels(a.w_sets[i])})
        stops = a.w_sets[i] == alive or not a.w_sets[i]
        if stops != (i == a.zeta):
            return _fail(name, {"level": i, "reason": "stopping rule"})
        if i < a.zeta and a.survivor_vertices[i + 1] != alive - a.w_sets[i]:
            return _fail(name, {"level": i, "reason": "residual is not D_i minus W_i"})
    return _ok(name)


def check_sink_union(ev: InstanceEvidence) -> CheckResult:
    name = "sink sets cover the vertices iff the last one is the whole residual"
    a = ev.analysis
    covered = frozenset().union(*a.w_sets) == frozenset(ev.bt.digraph.vertices)
    if covered != (a.last == a.terminal_vertices):
        return _fail(name, {"covered": covered, "last": ev.labels(a.last)})
    return _ok(name)


def check_acyclicity_agreement(ev: InstanceEvidence) -> CheckResult:
    name = "sink-based acyclicity agrees with cycle search"
    d = ev.bt.digraph
    if ev.analysis.acyclic == has_directed_cycle(d):
        return _fail(name, {"acyclic_via_sinks": ev.analysis.acyclic, "cycle": ev.pairs(find_directed_cycle(d))})
    return _ok(name)


def check_parity(ev: InstanceEvidence) -> CheckResult:
    name = "sink sets alternate between the two parts"
    if ev.analysis.zeta == 0:
        return _skip(name, "zeta = 0")
    report = check_parity_partition(ev.bt, ev.analysis)
    if not report.consistent:
        witness = report.to_dict()
        witness["even_union"] = ev.labels(report.even_union)
        witness["odd_union"] = ev.labels(report.odd_union)
        return _fail(name, witness)
    return _ok(name)


def check_walk_bound(ev: InstanceEvidence) -> CheckResult:
    name = "walks starting in level i have length at most i"
    a, d = ev.analysis, ev.bt.digraph
    top = a.zeta if a.acyclic else a.zeta - 1
    for i in range(top + 1):
        for v in sorted(a.w_sets[i]):
            length = max_walk_length_from(d, v, a.zeta + 1)
            if length > i:
                return _fail(name, {"vertex": d.label(v), "level": i, "walk_length": length})
    return _ok(name)


def check_level_arcs(ev: InstanceEvidence) -> CheckResult:
    name = "each level points to every lower level of opposite parity"
    missing = level_arc_violations(ev.bt, ev.analysis)
    if missing:
        return _fail(name, {"missing_arcs": ev.pairs(missing[:20])})
    return _ok(name)


def check_out_neighbor_clauses(ev: InstanceEvidence) -> CheckResult:
    name = "remaining part vertices point into each level"
    missing = out_neighbor_clause_violations(ev.bt, ev.analysis)
    if missing:
        return _fail(name, {"missing_arcs": ev.pairs(missing[:20])})
    return _ok(name)


def check_descending_paths(ev: InstanceEvidence) -> CheckResult:
    name = "level-descending selections form directed paths"
    missing = descending_path_violations(ev.bt, ev.analysis, limit=20)
    if missing:
        return _fail(name, {"missing_arcs": ev.pairs(missing)})
    return _ok(name)


# ─── competition ─────────────────────────────────────────


def check_oracle_equivalence(ev: InstanceEvidence) -> CheckResult:
    name = "matrix route matches walk oracle"
    d = ev.bt.digraph
    for m in range(1, ev.m_max + 1):
        oracle = m_step_competition_graph_oracle(d, m)
        computed = ev.graph(m)
        if computed != oracle:
            return _fail(name, {
                "m": m,
                "only_matrix": ev.pairs(sorted(computed.edges - oracle.edges)),
                "only_oracle": ev.pairs(sorted(oracle.edges - computed.edges)),
            })
    return _ok(name)


def check_no_cross_edges(ev: InstanceEvidence) -> CheckResult:
    name = "no competition edge crosses the bipartition"
    bt = ev.bt
    for m in range(1, ev.horizon + 1):
        crossing = [(u, v) for u, v in ev.graph(m).sorted_edges() if bt.part_of(u) != bt.part_of(v)]
        if crossing:
            return _fail(name, {"m": m, "edges": ev.pairs(crossing)})
    return _ok(name)


def check_edgeless_stays_edgeless(ev: InstanceEvidence) -> CheckResult:
    name = "once edgeless, the sequence stays edgeless"
    first = next((m for m in range(1, ev.horizon + 1) if ev.graph(m).is_edgeless()), None)
    if first is None:
        return _ok(name)
    for m in range(first + 1, ev.horizon + 1):
        if not ev.graph(m).is_edgeless():
            return _fail(name, {"edgeless_at": first, "edges_again_at": m})
    return _ok(name)


def check_edge_persistence(ev: InstanceEvidence) -> CheckResult:
    name = "edges persist in sink-free instances"
    if sinks(ev.bt.digraph):
        return _skip(name, "instance has sinks")
    for m in range(1, ev.horizon):
        lost = ev.graph(m).edges - ev.graph(m + 1).edges
        if lost:
            return _fail(name, {"m": m, "lost_edges": ev.pairs(sorted(lost))})
    return _ok(name)


def check_profile_definition(ev: InstanceEvidence) -> CheckResult:
    """Recompute the graph sequence far enough to test the profile against the definitions."""
    name = "competition index and period satisfy their definitions"
    p = ev.profile
    q, period, p_a = p.cindex, p.sequence_period, p.matrix_period
    window = p.matrix_index + p_a
    seq = competition_graph_sequence(ev.bt.digraph, q + 2 * p_a + window + 1)

    def c(m: int) -> Graph:
        return seq[m - 1]

    if any(c(q + i) != c(q + period + i) for i in range(window)):
        return _fail(name, {"reason": "tail not periodic", "cindex": q, "period": period})
    if c(q) != c(q + p.cperiod) or any(c(q) == c(q + k) for k in range(1, p.cperiod)):
        return _fail(name, {"reason": "cperiod not minimal", "cindex": q, "cperiod": p.cperiod})
    if q > 1:
        for k in range(1, p_a + 1):
            if all(c(q - 1 + i) == c(q - 1 + k + i) for i in range(window)):
                return _fail(name, {"reason": "cindex not minimal", "cindex": q, "period": k})
    return _ok(name)


# ─── characterization ────────────────────────────────────


def check_residual_cliques(ev: InstanceEvidence) -> CheckResult:
    name = "residual parts form cliques below the sink index"
    a, bt = ev.analysis, ev.bt
    for m in range(1, min(a.zeta, ev.horizon + 1)):
        g = ev.graph(m)
        gone = a.eliminated_before(m)
        for part in (bt.part1, bt.part2):
            rest = part - gone
            if not g.is_clique(rest):
                return _fail(name, {"m": m, "not_a_clique": ev.labels(rest)})
        touching = [(u, v) for u, v in g.sorted_edges() if u in gone or v in gone]
        if touching:
            return _fail(name, {"m": m, "eliminated_vertices_with_edges": ev.pairs(touching)})
    return _ok(name)


def check_acyclic_shapes(ev: InstanceEvidence) -> CheckResult:
    name = "acyclic competition graphs have the predicted shape"
    if not ev.analysis.acyclic:
        return _skip(name, "instance is cyclic")
    bt = ev.bt
    for m in range(1, ev.horizon + 1):
        pred = predict_acyclic(bt, ev.analysis, m)
        g = ev.graph(m)
        got = graph_structure(g).shape
        parts = tuple(classify_structure(g, part).shape for part in (bt.part1, bt.part2))
        if got != pred.shape or parts != pred.part_shapes:
            return _fail(name, {
                "m": m,
                "expected": pred.shape.label,
                "got": graph_structure(g).label,
            })
    return _ok(name)


def check_acyclic_profile(ev: InstanceEvidence) -> CheckResult:
    name = "acyclic competition index and period match the prediction"
    if not ev.analysis.acyclic:
        return _skip(name, "instance is cyclic")
    pred = predict_acyclic(ev.bt, ev.analysis, 1)
    p = ev.profile
    if not (pred.cindex.holds(p.cindex) and pred.cperiod.holds(p.cperiod)):
        return _fail(name, {
            "expected": [pred.cindex.value, pred.cperiod.value],
            "got": [p.cindex, p.cperiod],
            "zeta": ev.analysis.zeta,
        })
    return _ok(name)


def check_cyclic_part_structure(ev: InstanceEvidence) -> CheckResult:
    name = "cyclic part graphs are cliques or two overlapping cliques"
    if ev.analysis.acyclic:
        return _skip(name, "instance is acyclic")
    bt = ev.bt
    for m in range(2, ev.horizon + 1):
        for i, part in enumerate((bt.part1, bt.part2), start=1):
            s = classify_structure(ev.graph(m), part)
            if s.kind == IRREGULAR or (s.kind == CLIQUES_PLUS_ISOLATED and s.nontrivial > 2):
                return _fail(name, {"m": m, "part": i, "structure": s.label})
    return _ok(name)


def check_cyclic_profile(ev: InstanceEvidence) -> CheckResult:
    name = "cyclic competition index and period meet the prediction"
    if ev.analysis.acyclic:
        return _skip(name, "instance is acyclic")
    pred = predict_cyclic(ev.bt, ev.analysis, 2)
    p = ev.profile
    if not (pred.cindex.holds(p.cindex) and pred.cperiod.holds(p.cperiod)):
        return _fail(name, {
            "case": pred.applicability,
            "expected_cindex": str(pred.cindex),
            "expected_cperiod": str(pred.cperiod),
            "got": [p.cindex, p.cperiod],
        })
    return _ok(name)


def check_terminal_shapes(ev: InstanceEvidence) -> CheckResult:
    name = "cyclic instances with zeta >= 2 have the predicted part shapes"
    a, bt = ev.analysis, ev.bt
    if a.acyclic or a.zeta < 2:
        return _skip(name, "needs a cyclic instance with zeta >= 2")
    core = a.terminal_vertices
    for i, part in enumerate((bt.part1, bt.part2), start=1):
        if len(core & part) < 2:
            return _fail(name, {"part": i, "terminal_vertices": ev.labels(core & part)})
    for m in range(2, ev.horizon + 1):
        pred = predict_cyclic(bt, a, m)
        g = ev.graph(m)
        parts = tuple(classify_structure(g, part).shape for part in (bt.part1, bt.part2))
        if parts != pred.part_shapes:
            return _fail(name, {
                "m": m,
                "expected": [s.label for s in pred.part_shapes],
                "got": [classify_structure(g, part).label for part in (bt.part1, bt.part2)],
            })
    return _ok(name)


def check_single_level_structure(ev: InstanceEvidence) -> CheckResult:
    name = "single-sink-level instances keep parity cliques and two-step persistence"
    a, bt = ev.analysis, ev.bt
    if a.acyclic or a.zeta != 1:
        return _skip(name, "needs a cyclic instance with zeta = 1")
    for m in range(2, ev.horizon + 1):
        pred = predict_cyclic(bt, a, m)
        g = ev.graph(m)
        for clique in pred.cliques:
            if not g.is_clique(clique):
                return _fail(name, {"m": m, "not_a_clique": ev.labels(clique)})
        touching = [(u, v) for u, v in g.sorted_edges() if u in pred.isolated or v in pred.isolated]
        if touching:
            return _fail(name, {"m": m, "sink_edges": ev.pairs(touching)})
    for m in range(2, ev.horizon - 1):
        lost = ev.graph(m).edges - ev.graph(m + 2).edges
        if lost:
            return _fail(name, {"m": m, "lost_after_two_steps": ev.pairs(sorted(lost))})
    return _ok(name)


Check = Callable[[InstanceEvidence], CheckResult]

CHECK_GROUPS: dict[str, tuple[Check, ...]] = {
    "sinks": (
        check_sink_recursion,
        check_sink_union,
        check_acyclicity_agreement,
        check_parity,
        check_walk_bound,
        check_level_arcs,
        check_out_neighbor_clauses,
        check_descending_paths,
    ),
    "competition": (
        check_oracle_equivalence,
        check_no_cross_edges,
        check_edgeless_stays_edgeless,
        check_edge_persistence,
        check_profile_definition,
    ),
    "characterization": (
        check_residual_cliques,
        check_acyclic_shapes,
        check_acyclic_profile,
        check_cyclic_part_structure,
        check_cyclic_profile,
        check_terminal_shapes,
        check_single_level_structure,
    ),
}


def run_checks(ev: InstanceEvidence, groups: tuple[str, ...] = tuple(CHECK_GROUPS)) -> list[CheckResult]:
    results = []
    for group in groups:
        if group not in CHECK_GROUPS:
            raise ValueError(f"unknown check group: {group!r}")
        results.extend(check(ev) for check in CHECK_GROUPS[group])
    return results


def build_evidence(
    bt: BipartiteTournament,
    analysis: SinkAnalysis,
    profile: CompetitionProfile,
    m_max: int,
) -> InstanceEvidence:
    horizon = max(m_max, analysis.zeta + 2)
    graphs = tuple(competition_graph_sequence(bt.digraph, horizon))
    return InstanceEvidence(bt, analysis, profile, graphs, m_max)
