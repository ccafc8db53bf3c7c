"""Tests for src.competition: row graphs, C^m by matrix and by walk oracle, profiles."""

from __future__ import annotations

import pytest

from src.competition.engine import (
    competition_graph,
    competition_graph_sequence,
    m_step_competition_graph,
    m_step_competition_graph_oracle,
    row_graph,
)
from src.competition.profile import competition_profile
from src.core.boolean_matrix import BooleanMatrix, adjacency_matrix
from src.core.digraph import Digraph
from src.core.errors import CapExceeded
from src.generators.generators import enumerate_all
from src.sinks.sink_analysis import sinks
from tests.helpers.digraph_factory import make_cycle, random_digraphs

FIG2_C3 = [["a", "b"], ["a", "c"], ["b", "c"], ["d", "e"], ["e", "f"]]


def naive_profile(d: Digraph, horizon: int = 40, max_period: int = 6) -> tuple[int, int, int]:
    """C^1..C^horizon を実体化し、定義どおりに (cindex, cperiod, 最小周期) を探す。"""
    seq = competition_graph_sequence(d, horizon)

    def c(m: int):
        return seq[m - 1]

    for q in range(1, horizon):
        for r in range(1, max_period + 1):
            if q + r > horizon:
                break
            if all(c(q + i) == c(q + r + i) for i in range(horizon - q - r + 1)):
                cperiod = next(p for p in range(1, r + 1) if c(q) == c(q + p))
                return q, cperiod, r
    raise AssertionError("no period found within the horizon")


# ---------------------------------------------------------------------------
#  row graph / competition graph
# ---------------------------------------------------------------------------

class TestRowGraph:
    def test_identity_is_edgeless(self):
        assert row_graph(BooleanMatrix.identity(3)).is_edgeless()

    def test_all_ones_is_complete(self):
        g = row_graph(BooleanMatrix.ones(4))
        assert len(g.edges) == 6

    def test_fig1_adjacency(self, fig1_d):
        g = row_graph(adjacency_matrix(fig1_d.digraph), fig1_d.digraph.labels)
        assert g.edge_labels() == [["x1", "x2"], ["x1", "x3"], ["x2", "x3"], ["y1", "y2"]]


class TestCompetitionGraph:
    def test_equals_row_graph(self, fig1_d):
        d = fig1_d.digraph
        assert competition_graph(d) == row_graph(adjacency_matrix(d))

    def test_first_step_is_competition_graph(self, fig2_d):
        d = fig2_d.digraph
        assert m_step_competition_graph(d, 1) == competition_graph(d)


class TestMStepCompetitionGraph:
    def test_fig2_third_step(self, fig2_d):
        assert m_step_competition_graph(fig2_d.digraph, 3).edge_labels() == FIG2_C3

    def test_fig2_fourth_step_adds_df(self, fig2_d):
        got = m_step_competition_graph(fig2_d.digraph, 4).edge_labels()
        assert got == sorted(FIG2_C3 + [["d", "f"]])

    def test_fig1_fourth_step_edgeless(self, fig1_d):
        g = m_step_competition_graph(fig1_d.digraph, 4)
        assert g.is_edgeless() and g.n == 6

    def test_m_must_be_positive(self, fig1_d):
        with pytest.raises(ValueError):
            m_step_competition_graph(fig1_d.digraph, 0)

    def test_sequence_matches_single_steps(self, fig2_d):
        d = fig2_d.digraph
        seq = competition_graph_sequence(d, 6)
        assert seq == [m_step_competition_graph(d, m) for m in range(1, 7)]


class TestOracle:
    def test_fixture_examples(self, fig1_d, fig2_d):
        assert m_step_competition_graph_oracle(fig2_d.digraph, 3).edge_labels() == FIG2_C3
        assert m_step_competition_graph_oracle(fig2_d.digraph, 4) == m_step_competition_graph(fig2_d.digraph, 4)
        assert m_step_competition_graph_oracle(fig1_d.digraph, 4).is_edgeless()

    def test_single_arc(self):
        assert m_step_competition_graph_oracle(Digraph.from_arcs(2, [(0, 1)]), 1).is_edgeless()

    def test_four_cycle(self):
        """各頂点の m-step prey は 1 個で互いに異なるので、どの m でも辺はない。"""
        d = make_cycle(4)
        for m in range(1, 9):
            assert m_step_competition_graph_oracle(d, m).is_edgeless()
            assert m_step_competition_graph(d, m).is_edgeless()

    def test_exhaustive_3_3(self):
        for bt in enumerate_all(3, 3):
            d = bt.digraph
            for m, g in enumerate(competition_graph_sequence(d, 10), start=1):
                assert g == m_step_competition_graph_oracle(d, m)

    def test_random_digraphs(self):
        for d in random_digraphs(200, max_n=7, seed=17):
            for m, g in enumerate(competition_graph_sequence(d, 10), start=1):
                assert g == m_step_competition_graph_oracle(d, m)


# ---------------------------------------------------------------------------
#  bipartite edge structure over all (3,3) orientations
# ---------------------------------------------------------------------------

class TestBipartiteEdgeStructure:
    def test_no_cross_edges(self):
        for bt in enumerate_all(3, 3):
            for g in competition_graph_sequence(bt.digraph, 8):
                assert all(bt.part_of(u) == bt.part_of(v) for u, v in g.edges)

    def test_edgeless_stays_edgeless(self):
        for bt in enumerate_all(3, 3):
            seq = competition_graph_sequence(bt.digraph, 8)
            flags = [g.is_edgeless() for g in seq]
            if True in flags:
                first = flags.index(True)
                assert all(flags[first:])

    def test_sink_free_edges_persist(self):
        for bt in enumerate_all(3, 3):
            if sinks(bt.digraph):
                continue
            seq = competition_graph_sequence(bt.digraph, 8)
            for earlier, later in zip(seq, seq[1:]):
                assert earlier.edges <= later.edges


# ---------------------------------------------------------------------------
#  competition_profile
# ---------------------------------------------------------------------------

class TestCompetitionProfile:
    def test_fig2(self, fig2_d):
        p = competition_profile(fig2_d.digraph)
        assert (p.cindex, p.cperiod) == (4, 1)

    def test_fig1(self, fig1_d):
        p = competition_profile(fig1_d.digraph)
        assert (p.cindex, p.cperiod) == (3, 1)

    def test_fig1_prime(self, fig1_dprime):
        p = competition_profile(fig1_dprime.digraph)
        assert (p.cindex, p.cperiod) == (2, 1)

    def test_single_arc(self):
        p = competition_profile(Digraph.from_arcs(2, [(0, 1)]))
        assert (p.cindex, p.cperiod) == (1, 1)

    def test_prefix_and_folding(self, fig2_d):
        d = fig2_d.digraph
        p = competition_profile(d)
        assert len(p.graph_sequence_prefix) == p.cindex + p.sequence_period
        assert p.graph_at(4) == m_step_competition_graph(d, 4)
        assert p.graph_at(25) == m_step_competition_graph(d, 25)

    def test_to_dict_keys(self, fig2_d):
        out = competition_profile(fig2_d.digraph).to_dict()
        assert out["cindex"] == 4 and out["cperiod"] == 1
        assert set(out) == {"cindex", "cperiod", "sequence_period", "matrix_index", "matrix_period"}

    def test_cap_exceeded(self, fig2_d):
        with pytest.raises(CapExceeded) as exc:
            competition_profile(fig2_d.digraph, safety_cap=1)
        assert exc.value.cap == 1

    def test_env_cap(self, fig2_d, monkeypatch):
        monkeypatch.setenv("COMPLAB_SAFETY_CAP", "2")
        with pytest.raises(CapExceeded):
            competition_profile(fig2_d.digraph)

    def test_cycle_period(self):
        """3-cycle: C^m は常に辺なし、行列周期 3 でもグラフ周期は 1。"""
        p = competition_profile(make_cycle(3))
        assert (p.cindex, p.cperiod, p.sequence_period) == (1, 1, 1)
        assert p.matrix_period == 3

    def test_matches_naive_scan(self):
        for d in random_digraphs(200, max_n=6, seed=29):
            p = competition_profile(d)
            assert (p.cindex, p.cperiod, p.sequence_period) == naive_profile(d)
