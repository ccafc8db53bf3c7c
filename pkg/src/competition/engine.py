"""Competition graphs and m-step competition graphs.

Two independent routes:
  matrix route  C^m(D) = R(A^m)   (row graph of the Boolean power)
  walk oracle   u ~ v  iff  the m-step prey sets of u and v intersect
"""

from __future__ import annotations

import numpy as np

from src.core.boolean_matrix import BooleanMatrix, adjacency_matrix, matrix_power
from src.core.digraph import Digraph, m_step_prey_set
from src.core.graph import Graph


def row_graph(a: BooleanMatrix, labels: tuple[str, ...] | None = None) -> Graph:
    """Rows u ≠ v are adjacent iff they share a column holding 1 in both."""
    rows = a.data.astype(np.intp)
    shared = (rows @ rows.T) > 0
    np.fill_diagonal(shared, False)
    edges = [(int(u), int(v)) for u, v in np.argwhere(np.triu(shared, k=1))]
    return Graph(a.n, frozenset(edges), labels)


def competition_graph(d: Digraph) -> Graph:
    return row_graph(adjacency_matrix(d), d.labels)


def m_step_competition_graph(d: Digraph, m: int) -> Graph:
    """C^m(D) via the Boolean power A^m. Loops of D^m never reach the row graph."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return row_graph(matrix_power(adjacency_matrix(d), m), d.labels)


def m_step_competition_graph_oracle(d: Digraph, m: int) -> Graph:
    """定義どおり prey 集合の交差から C^m(D) を作る (行列を使わない oracle)。"""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    prey = [m_step_prey_set(d, v, m) for v in d.vertices]
    edges = [
        (u, v)
        for u in range(d.n)
        for v in range(u + 1, d.n)
        if prey[u] & prey[v]
    ]
    return Graph(d.n, frozenset(edges), d.labels)


def competition_graph_sequence(d: Digraph, m_max: int) -> list[Graph]:
    """[C^1, ..., C^m_max] by iterated multiplication."""
    if m_max < 1:
        return []
    a = adjacency_matrix(d)
    power = a
    graphs = [row_graph(power, d.labels)]
    for _ in range(1, m_max):
        power = power @ a
        graphs.append(row_graph(power, d.labels))
    return graphs
