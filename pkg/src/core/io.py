"""JSON ingestion/emission for digraphs and DOT rendering.

Two input shapes are accepted:
  bipartite: {"n1", "n2", "labels1", "labels2", "arcs": [[from, to], ...]}
  general:   {"n", "labels", "arcs": [[from, to], ...]}
Both are schema-checked with jsonschema before semantic validation.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from jsonschema import Draft7Validator

from src.core.digraph import (
    BipartiteTournament,
    Digraph,
    default_bipartite_labels,
    validate_bipartite_tournament,
)
from src.core.errors import DuplicateArc, SchemaError, UnknownLabel
from src.core.graph import Graph
from src.utils.file_lock import read_json
from src.utils.logger import setup_logger

logger = setup_logger("io")

_SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"


@lru_cache(maxsize=None)
def _validator(name: str) -> Draft7Validator:
    with open(_SCHEMA_DIR / f"{name}.schema.json", "r", encoding="utf-8") as f:
        return Draft7Validator(json.load(f))


def _check_schema(name: str, data) -> None:
    errors = sorted(_validator(name).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        path = "/".join(str(p) for p in first.absolute_path)
        raise SchemaError(first.message, path)


def _resolve_labels(given: list[str] | None, defaults: tuple[str, ...], what: str) -> tuple[str, ...]:
    if given is None:
        return defaults
    if len(given) != len(defaults):
        raise SchemaError(f"{what} has {len(given)} entries, expected {len(defaults)}")
    if len(set(given)) != len(given):
        raise SchemaError(f"{what} contains duplicate labels")
    return tuple(given)


def _resolve_arcs(raw_arcs: list, labels: tuple[str, ...], explicit_labels: bool) -> list[tuple[int, int]]:
    index = {label: i for i, label in enumerate(labels)}

    def resolve(x) -> int:
        if isinstance(x, str):
            if x not in index:
                raise UnknownLabel(x)
            return index[x]
        if explicit_labels:
            if str(x) not in index:
                raise UnknownLabel(str(x))
            return index[str(x)]
        if not 0 <= x < len(labels):
            raise UnknownLabel(str(x))
        return x

    seen: set[tuple[int, int]] = set()
    arcs = []
    for a, b in raw_arcs:
        arc = (resolve(a), resolve(b))
        if arc in seen:
            raise DuplicateArc(labels[arc[0]], labels[arc[1]])
        seen.add(arc)
        arcs.append(arc)
    return arcs


def parse_instance(data: dict) -> Digraph | BipartiteTournament:
    """Build a validated instance from decoded JSON.

    Raises:
        SchemaError, UnknownLabel, DuplicateArc, SelfLoop, and the bipartite
        tournament validation errors.
    """
    if not isinstance(data, dict):
        raise SchemaError("top-level value must be an object")

    if "n1" in data or "n2" in data:
        _check_schema("bipartite_tournament", data)
        n1, n2 = data["n1"], data["n2"]
        defaults = default_bipartite_labels(n1, n2)
        labels1 = _resolve_labels(data.get("labels1"), defaults[:n1], "labels1")
        labels2 = _resolve_labels(data.get("labels2"), defaults[n1:], "labels2")
        labels = labels1 + labels2
        if len(set(labels)) != len(labels):
            raise SchemaError("labels1 and labels2 share a label")
        explicit = "labels1" in data or "labels2" in data
        arcs = _resolve_arcs(data["arcs"], labels, explicit)
        d = Digraph(n1 + n2, frozenset(arcs), labels)
        return validate_bipartite_tournament(d, range(n1), range(n1, n1 + n2))

    _check_schema("digraph", data)
    n = data["n"]
    labels = _resolve_labels(data.get("labels"), tuple(str(i) for i in range(n)), "labels")
    arcs = _resolve_arcs(data["arcs"], labels, "labels" in data)
    return Digraph(n, frozenset(arcs), labels)


def load_instance(path: Path) -> Digraph | BipartiteTournament:
    """インスタンスファイルを読み込み、スキーマ検証して返す。"""
    try:
        data = read_json(Path(path))
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from e
    instance = parse_instance(data)
    logger.debug("Loaded %s from %s", type(instance).__name__, path)
    return instance


# ─── emission ─────────────────────────────────────────────


def digraph_to_json(d: Digraph) -> dict:
    return {
        "n": d.n,
        "labels": [d.label(v) for v in d.vertices],
        "arcs": [[d.label(u), d.label(v)] for u, v in d.sorted_arcs()],
    }


def tournament_to_json(bt: BipartiteTournament) -> dict:
    d = bt.digraph
    p1 = sorted(bt.part1)
    p2 = sorted(bt.part2)
    return {
        "n1": len(p1),
        "n2": len(p2),
        "labels1": [d.label(v) for v in p1],
        "labels2": [d.label(v) for v in p2],
        "arcs": [[d.label(u), d.label(v)] for u, v in d.sorted_arcs()],
    }


def instance_to_json(instance: Digraph | BipartiteTournament) -> dict:
    if isinstance(instance, BipartiteTournament):
        return tournament_to_json(instance)
    return digraph_to_json(instance)


def graph_to_json(g: Graph) -> dict:
    return {
        "n": g.n,
        "labels": [g.label(v) for v in range(g.n)],
        "edges": g.edge_labels(),
    }


# ─── DOT ──────────────────────────────────────────────────


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _rank_lines(labels: list[str], parts: tuple[frozenset[int], frozenset[int]] | None, n: int) -> list[str]:
    lines = []
    if parts is None:
        for v in range(n):
            lines.append(f"  {_quote(labels[v])};")
        return lines
    for i, part in enumerate(parts, start=1):
        members = " ".join(_quote(labels[v]) + ";" for v in sorted(part))
        lines.append(f"  subgraph part{i} {{ rank=same; {members} }}")
    return lines


def digraph_to_dot(
    d: Digraph,
    parts: tuple[frozenset[int], frozenset[int]] | None = None,
    name: str = "D",
) -> str:
    """DOT for a digraph; bipartite parts are pinned to two ranks."""
    labels = [d.label(v) for v in d.vertices]
    lines = [f"digraph {_quote(name)} {{"]
    if parts is not None:
        lines.append("  rankdir=LR;")
    lines.extend(_rank_lines(labels, parts, d.n))
    for u, v in d.sorted_arcs():
        lines.append(f"  {_quote(labels[u])} -> {_quote(labels[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(
    g: Graph,
    parts: tuple[frozenset[int], frozenset[int]] | None = None,
    name: str = "C",
) -> str:
    """Undirected DOT; an edgeless graph yields node statements only."""
    labels = [g.label(v) for v in range(g.n)]
    lines = [f"graph {_quote(name)} {{"]
    if parts is not None:
        lines.append("  rankdir=LR;")
    lines.extend(_rank_lines(labels, parts, g.n))
    for u, v in g.sorted_edges():
        lines.append(f"  {_quote(labels[u])} -- {_quote(labels[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
