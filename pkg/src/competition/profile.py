"""Competition index and competition period.

A^1, A^2, ... over the finite set of n×n Boolean matrices is eventually
periodic. The matrix index q_A and period p_A come from a fingerprint table
of every power seen. The graph sequence C^m = R(A^m) is a pointwise image of
that sequence, so its eventual period divides p_A and its index is <= q_A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from src.competition.engine import row_graph
from src.core.boolean_matrix import BooleanMatrix, adjacency_matrix
from src.core.digraph import Digraph
from src.core.errors import CapExceeded
from src.core.graph import Graph
from src.utils.config_loader import get_safety_cap
from src.utils.logger import setup_logger

logger = setup_logger("profile")


@dataclass(frozen=True)
class CompetitionProfile:
    """cperiod is the least p with C^q = C^{q+p} at q = cindex; sequence_period
    is the least eventual period of the whole tail. The prefix holds
    C^1..C^{cindex+sequence_period}."""

    cindex: int
    cperiod: int
    sequence_period: int
    matrix_index: int
    matrix_period: int
    graph_sequence_prefix: tuple[Graph, ...] = field(repr=False)

    def graph_at(self, m: int) -> Graph:
        """C^m for any m >= 1, folded back into the stored prefix."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        q, p = self.cindex, self.sequence_period
        if m > len(self.graph_sequence_prefix):
            m = q + (m - q) % p
        return self.graph_sequence_prefix[m - 1]

    def to_dict(self) -> dict:
        return {
            "cindex": self.cindex,
            "cperiod": self.cperiod,
            "sequence_period": self.sequence_period,
            "matrix_index": self.matrix_index,
            "matrix_period": self.matrix_period,
        }


def _matrix_cycle(a: BooleanMatrix, cap: int) -> tuple[list[BooleanMatrix], int, int]:
    """Powers A^1..A^{q_A+p_A-1} plus (q_A, p_A).

    Raises:
        CapExceeded: no repetition among the first ``cap`` powers.
    """
    powers: list[BooleanMatrix] = []
    seen: dict[bytes, int] = {}
    power = a
    for k in range(1, cap + 1):
        fp = power.fingerprint()
        if fp in seen:
            first = seen[fp]
            return powers, first, k - first
        seen[fp] = k
        powers.append(power)
        power = power @ a
    logger.error("Matrix power sequence did not repeat within %d powers (n=%d)", cap, a.n)
    raise CapExceeded(cap)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def competition_profile(d: Digraph, safety_cap: int | None = None) -> CompetitionProfile:
    """Compute (cindex, cperiod) of d.

    ``safety_cap`` bounds the number of matrix powers examined; None resolves
    through settings (COMPLAB_SAFETY_CAP, then competition.safety_cap, then 2n²+16).

    Raises:
        CapExceeded: the matrix sequence does not repeat within the cap.
    """
    cap = safety_cap if safety_cap is not None else get_safety_cap(d.n)
    if cap < 1:
        raise ValueError(f"safety_cap must be >= 1, got {cap}")

    powers, q_a, p_a = _matrix_cycle(adjacency_matrix(d), cap)
    cache: dict[int, Graph] = {}

    def graph_at(m: int) -> Graph:
        if m >= q_a:
            m = q_a + (m - q_a) % p_a
        if m not in cache:
            cache[m] = row_graph(powers[m - 1], d.labels)
        return cache[m]

    # eventual period of the graph sequence: minimal divisor of p_A
    period = next(
        div
        for div in _divisors(p_a)
        if all(graph_at(q_a + i) == graph_at(q_a + i + div) for i in range(p_a))
    )

    q = q_a
    while q > 1 and graph_at(q - 1) == graph_at(q - 1 + period):
        q -= 1

    cperiod = next(p for p in range(1, period + 1) if graph_at(q) == graph_at(q + p))

    prefix = tuple(graph_at(m) for m in range(1, q + period + 1))
    logger.debug(
        "profile n=%d: matrix (q=%d, p=%d) -> cindex=%d cperiod=%d sequence_period=%d",
        d.n, q_a, p_a, q, cperiod, period,
    )
    return CompetitionProfile(
        cindex=q,
        cperiod=cperiod,
        sequence_period=period,
        matrix_index=q_a,
        matrix_period=p_a,
        graph_sequence_prefix=prefix,
    )
