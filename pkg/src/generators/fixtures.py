"""Named reference instances.

fig1_D       acyclic, sink sets {y3}, {x2,x3}, {y1,y2}, {x1}
fig1_Dprime  cyclic, zeta = 2, terminal vertices {x1,x2,y1,y2}
fig2_D       sink-free, competition index 4
"""

from __future__ import annotations

from src.core.digraph import BipartiteTournament, Digraph, validate_bipartite_tournament
from src.core.errors import UnknownFixture

_FIXTURES: dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[tuple[str, str], ...]]] = {
    "fig1_D": (
        ("x1", "x2", "x3"),
        ("y1", "y2", "y3"),
        (
            ("x1", "y1"), ("x1", "y2"), ("x1", "y3"),
            ("y1", "x2"), ("y2", "x2"), ("x2", "y3"),
            ("y1", "x3"), ("y2", "x3"), ("x3", "y3"),
        ),
    ),
    "fig1_Dprime": (
        ("x1", "x2", "x3"),
        ("y1", "y2", "y3"),
        (
            ("x1", "y1"), ("y2", "x1"), ("x1", "y3"),
            ("y1", "x2"), ("x2", "y2"), ("x2", "y3"),
            ("y1", "x3"), ("y2", "x3"), ("x3", "y3"),
        ),
    ),
    "fig2_D": (
        ("a", "b", "c"),
        ("d", "e", "f"),
        (
            ("a", "d"), ("e", "a"), ("a", "f"),
            ("d", "b"), ("b", "e"), ("b", "f"),
            ("c", "d"), ("e", "c"), ("f", "c"),
        ),
    ),
}

FIXTURE_NAMES = tuple(_FIXTURES)


def _build(name: str) -> tuple[Digraph, int]:
    part1, part2, arcs = _FIXTURES[name]
    labels = part1 + part2
    index = {label: i for i, label in enumerate(labels)}
    d = Digraph.from_arcs(len(labels), ((index[u], index[v]) for u, v in arcs), labels)
    return d, len(part1)


def fixtures() -> dict[str, Digraph]:
    return {name: _build(name)[0] for name in _FIXTURES}


def load_fixture(name: str) -> BipartiteTournament:
    """名前付き fixture を検証済み BipartiteTournament として返す (part1 が先)。"""
    if name not in _FIXTURES:
        raise UnknownFixture(name, list(FIXTURE_NAMES))
    d, n1 = _build(name)
    return validate_bipartite_tournament(d, range(n1), range(n1, d.n))
