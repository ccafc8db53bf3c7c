"""Plain-text rendering for CLI output. Rows are already sorted by callers."""

from __future__ import annotations

import json

from src.characterization.structure import classify_structure, graph_structure
from src.competition.profile import CompetitionProfile
from src.core.digraph import BipartiteTournament, Digraph
from src.core.graph import Graph
from src.sinks.sink_analysis import SinkAnalysis


def to_json(obj) -> str:
    """Stable JSON for stdout: fixed key order, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def format_table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _edge_text(g: Graph) -> str:
    return " ".join(f"{u}{v}" if len(u) == len(v) == 1 else f"{u}-{v}" for u, v in g.edge_labels()) or "-"


def render_analysis(
    instance: Digraph | BipartiteTournament,
    analysis: SinkAnalysis,
    graphs: list[Graph],
    profile: CompetitionProfile,
) -> str:
    bipartite = isinstance(instance, BipartiteTournament)
    d = instance.digraph if bipartite else instance
    out = []
    if bipartite:
        out.append(f"bipartite tournament: n1={instance.n1} n2={instance.n2} arcs={len(d.arcs)}")
    else:
        out.append(f"digraph: n={d.n} arcs={len(d.arcs)}")
    out.append(f"zeta = {analysis.zeta}  acyclic = {'yes' if analysis.acyclic else 'no'}")
    for i, w in enumerate(analysis.w_sets):
        out.append(f"  W_{i}: {' '.join(sorted(d.label(v) for v in w)) or '(empty)'}")
    if analysis.stopping_note:
        out.append(analysis.stopping_note)
    out.append("")

    headers = ["m", "edges", "structure"]
    if bipartite:
        headers += ["part1", "part2"]
    rows = []
    for m, g in enumerate(graphs, start=1):
        row = [m, _edge_text(g), graph_structure(g).label]
        if bipartite:
            row += [classify_structure(g, part).label for part in (instance.part1, instance.part2)]
        rows.append(row)
    out.append(format_table(headers, rows))
    out.append("")
    out.append(
        f"cindex = {profile.cindex}  cperiod = {profile.cperiod}  "
        f"(matrix index {profile.matrix_index}, matrix period {profile.matrix_period})"
    )
    return "\n".join(out) + "\n"
