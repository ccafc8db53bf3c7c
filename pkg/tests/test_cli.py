"""Tests for src.cli.main: every subcommand through main(argv).

settings は isolated_dirs で tmp_path 配下に向けてあるので、witness/export
ファイルがリポジトリに漏れることはない。
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import replace

import pytest

from src.characterization.checks import FAIL, CheckResult
from src.characterization.prediction import acyclic_cindex
from src.characterization.verifier import verify_instance
from src.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from src.cli.sweep import ROW_FIELDS
from src.core.digraph import BipartiteTournament
from src.sinks.sink_analysis import sink_analysis


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
#  analyze
# ---------------------------------------------------------------------------

class TestAnalyze:
    def test_fig2_json(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "analyze", "--fixture", "fig2_D", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["profile"]["cindex"] == 4
        assert data["profile"]["cperiod"] == 1
        assert data["sinks"]["zeta"] == 0

    def test_fig1_json(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "analyze", "--fixture", "fig1_D", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["sinks"]["zeta"] == 3
        assert data["sinks"]["W"][0] == ["y3"]
        assert [g["m"] for g in data["competition_graphs"]] == [1, 2, 3, 4, 5, 6]
        assert data["competition_graphs"][1]["edges"] == [["y1", "y2"]]
        assert data["competition_graphs"][2]["edges"] == []

    def test_text(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "analyze", "--fixture", "fig1_D", "--m-max", "3")
        assert code == EXIT_OK
        assert "zeta = 3" in out
        assert "K3+K2+I1" in out
        assert "cindex = 3" in out

    def test_input_file(self, capsys, isolated_dirs):
        path = isolated_dirs["root"] / "pair.json"
        path.write_text(json.dumps({"n1": 1, "n2": 1, "arcs": [["x1", "y1"]]}))
        code, out, _ = _run(capsys, "analyze", "--input", str(path), "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["profile"]["cindex"] == 1

    def test_general_digraph(self, capsys, isolated_dirs):
        path = isolated_dirs["root"] / "cycle.json"
        path.write_text(json.dumps({"n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}))
        code, out, _ = _run(capsys, "analyze", "--input", str(path), "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["sinks"]["zeta"] == 0

    def test_generated(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "analyze", "--n1", "3", "--n2", "3", "--seed", "5", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["instance"]["n1"] == 3

    def test_duplicate_arc_is_input_error(self, capsys, isolated_dirs):
        path = isolated_dirs["root"] / "dup.json"
        path.write_text(json.dumps({"n1": 1, "n2": 1, "arcs": [["x1", "y1"], ["x1", "y1"]]}))
        code, out, err = _run(capsys, "analyze", "--input", str(path))
        assert code == EXIT_INPUT
        assert out == ""
        assert "error:" in err

    def test_missing_file(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "analyze", "--input", str(isolated_dirs["root"] / "nope.json"))
        assert code == EXIT_INPUT

    def test_no_source(self, capsys, isolated_dirs):
        code, _, err = _run(capsys, "analyze")
        assert code == EXIT_INPUT
        assert "exactly one instance source" in err

    def test_fixture_and_generator_flags(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "analyze", "--fixture", "fig1_D", "--n1", "2")
        assert code == EXIT_INPUT

    def test_verify_exhaustive_with_generator_flags(self, capsys, isolated_dirs):
        code, out, err = _run(capsys, "verify", "--exhaustive", "2", "2", "--n1", "3", "--n2", "3", "--seed", "5")
        assert code == EXIT_INPUT
        assert out == ""
        assert "--exhaustive cannot be combined" in err

    def test_verify_exhaustive_with_seed_only(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "verify", "--exhaustive", "2", "2", "--seed", "5")
        assert code == EXIT_INPUT

    @pytest.mark.parametrize("extra", [("--n1", "3"), ("--seed", "5"), ("--samples", "10")])
    def test_sweep_exhaustive_with_sampling_flags(self, capsys, isolated_dirs, extra):
        code, out, _ = _run(capsys, "sweep", "--exhaustive", "2", "2", *extra)
        assert code == EXIT_INPUT
        assert out == ""

    def test_stopping_note_for_acyclic(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "analyze", "--fixture", "fig1_D", "--m-max", "3")
        assert code == EXIT_OK
        assert "note: the stopping rule halts at W_3 = V(D_3), so zeta = 3" in out
        assert "gives zeta = 4" in out

    def test_no_stopping_note_for_cyclic(self, capsys, isolated_dirs):
        _, out, _ = _run(capsys, "analyze", "--fixture", "fig1_Dprime", "--m-max", "3")
        assert "note:" not in out

    def test_conflicting_sources_rejected_by_parser(self, isolated_dirs):
        with pytest.raises(SystemExit) as exc:
            main(["analyze", "--fixture", "fig1_D", "--input", "x.json"])
        assert exc.value.code == 2

    def test_safety_cap_override(self, capsys, isolated_dirs):
        code, _, err = _run(capsys, "analyze", "--fixture", "fig2_D", "--safety-cap", "2")
        assert code == EXIT_INPUT
        assert "error:" in err


# ---------------------------------------------------------------------------
#  generate
# ---------------------------------------------------------------------------

class TestGenerate:
    def test_stdout_is_deterministic(self, capsys, isolated_dirs):
        _, first, _ = _run(capsys, "generate", "--n1", "3", "--n2", "4", "--seed", "7")
        _, second, _ = _run(capsys, "generate", "--n1", "3", "--n2", "4", "--seed", "7")
        assert first == second
        data = json.loads(first)
        assert (data["n1"], data["n2"]) == (3, 4)
        assert len(data["arcs"]) == 12

    def test_output_file_byte_identical(self, capsys, isolated_dirs):
        a = isolated_dirs["root"] / "a.json"
        b = isolated_dirs["root"] / "b.json"
        for path in (a, b):
            code, out, _ = _run(capsys, "generate", "--n1", "4", "--n2", "4", "--seed", "99", "--mode", "sinkless", "--output", str(path))
            assert code == EXIT_OK and out == ""
        assert a.read_bytes() == b.read_bytes()

    def test_sinkless_infeasible(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "generate", "--n1", "1", "--n2", "3", "--mode", "sinkless")
        assert code == EXIT_INPUT

    def test_invalid_sizes(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "generate", "--n1", "0", "--n2", "3")
        assert code == EXIT_INPUT

    def test_missing_required_flag(self, isolated_dirs):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--n1", "3"])
        assert exc.value.code == 2


# ---------------------------------------------------------------------------
#  verify
# ---------------------------------------------------------------------------

class TestVerify:
    def test_fixture_passes(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "verify", "--fixture", "fig1_Dprime")
        assert code == EXIT_OK
        assert out.rstrip().endswith("ALL PASS")
        assert not isolated_dirs["witness"].exists() or not any(isolated_dirs["witness"].iterdir())

    def test_text_carries_stopping_note(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "verify", "--fixture", "fig1_D")
        assert code == EXIT_OK
        assert "so zeta = 3" in out.splitlines()[1]

    def test_json_report(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "verify", "--fixture", "fig2_D", "--format", "json", "--m-max", "8")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["passed"] and data["m_max"] == 8
        assert data["profile"]["cindex"] == 4

    def test_exhaustive(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "verify", "--exhaustive", "2", "2", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["instances"] == 16
        assert data["acyclic"] + data["cyclic"] == 16
        assert data["failed"] == 0 and data["first_failure"] is None

    def test_exhaustive_too_large(self, capsys, isolated_dirs):
        code, _, err = _run(capsys, "verify", "--exhaustive", "5", "5")
        assert code == EXIT_INPUT
        assert "sweep --samples" in err

    def test_unknown_group(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "verify", "--fixture", "fig1_D", "--groups", "sinks,bogus")
        assert code == EXIT_INPUT

    def test_m_max_too_small(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "verify", "--fixture", "fig1_D", "--m-max", "1")
        assert code == EXIT_INPUT

    def test_general_digraph_rejected(self, capsys, isolated_dirs):
        path = isolated_dirs["root"] / "cycle.json"
        path.write_text(json.dumps({"n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}))
        code, _, _ = _run(capsys, "verify", "--input", str(path))
        assert code == EXIT_INPUT

    def test_failure_writes_witness(self, capsys, isolated_dirs, monkeypatch):
        def failing(bt, **kwargs):
            report = verify_instance(bt, **kwargs)
            bad = CheckResult("forced failure", FAIL, {"m": 1})
            return replace(report, checks=report.checks + (bad,))

        monkeypatch.setattr("src.cli.main.verify_instance", failing)
        code, out, _ = _run(capsys, "verify", "--fixture", "fig1_D")
        assert code == EXIT_FAILED
        assert "1 FAILED" in out
        witness = isolated_dirs["witness"] / "witness_fig1_D.json"
        data = json.loads(witness.read_text())
        assert data["passed"] is False
        assert data["instance"]["n1"] == 3


# ---------------------------------------------------------------------------
#  sweep
# ---------------------------------------------------------------------------

class TestSweep:
    def test_exhaustive_json(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "sweep", "--exhaustive", "2", "2")
        assert code == EXIT_OK
        data = json.loads(out)
        assert [r["id"] for r in data["rows"]] == list(range(16))
        assert data["aggregate"]["instances"] == 16
        assert sum(e["count"] for e in data["aggregate"]["by_profile"]) == 16

    def test_exhaustive_csv(self, capsys, isolated_dirs):
        code, out, _ = _run(capsys, "sweep", "--exhaustive", "2", "2", "--format", "csv")
        assert code == EXIT_OK
        rows_part = out.split("\n\n")[0]
        rows = list(csv.DictReader(io.StringIO(rows_part)))
        assert len(rows) == 16
        assert list(rows[0]) == ROW_FIELDS

    def test_sampled_to_file(self, capsys, isolated_dirs):
        path = isolated_dirs["root"] / "sweep.json"
        code, out, _ = _run(capsys, "sweep", "--n1", "3", "--n2", "3", "--samples", "20", "--seed", "4", "--mode", "acyclic", "--output", str(path))
        assert code == EXIT_OK and out == ""
        data = json.loads(path.read_text())
        assert len(data["rows"]) == 20
        assert all(r["acyclic"] for r in data["rows"])

    def test_sampled_is_deterministic(self, capsys, isolated_dirs):
        argv = ("sweep", "--n1", "3", "--n2", "4", "--samples", "10", "--seed", "11")
        _, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert first == second

    def test_sinkless_infeasible(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "sweep", "--n1", "1", "--n2", "3", "--mode", "sinkless", "--samples", "2")
        assert code == EXIT_INPUT

    def test_needs_a_source(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "sweep")
        assert code == EXIT_INPUT


# ---------------------------------------------------------------------------
#  export
# ---------------------------------------------------------------------------

class TestExport:
    def test_fig2_panels(self, capsys, isolated_dirs):
        out_dir = isolated_dirs["root"] / "dot"
        code, out, _ = _run(capsys, "export", "--fixture", "fig2_D", "--m", "3,4", "--out-dir", str(out_dir))
        assert code == EXIT_OK
        assert len(out.splitlines()) == 3
        assert (out_dir / "fig2_D_D.dot").read_text().count("->") == 9
        assert (out_dir / "fig2_D_C3.dot").read_text().count("--") == 5
        assert (out_dir / "fig2_D_C4.dot").read_text().count("--") == 6

    def test_default_export_dir(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "export", "--fixture", "fig1_D")
        assert code == EXIT_OK
        assert (isolated_dirs["export"] / "fig1_D_D.dot").exists()
        assert (isolated_dirs["export"] / "fig1_D_C1.dot").exists()

    @pytest.mark.parametrize("raw", ["0", "a,b", ""])
    def test_bad_m_list(self, capsys, isolated_dirs, raw):
        code, _, _ = _run(capsys, "export", "--fixture", "fig1_D", "--m", raw)
        assert code == EXIT_INPUT


class TestGlobalFlags:
    def test_verbose(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "--verbose", "generate", "--n1", "1", "--n2", "1")
        assert code == EXIT_OK

    def test_unknown_command(self, isolated_dirs):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


class TestSweepClaims:
    def test_cyclic_rows_bounded(self, capsys, isolated_dirs):
        _, out, _ = _run(capsys, "sweep", "--exhaustive", "2", "2")
        rows = json.loads(out)["rows"]
        assert all(r["cindex"] <= 4 for r in rows if not r["acyclic"])

    def test_acyclic_rows_match_formula(self, capsys, isolated_dirs):
        _, out, _ = _run(capsys, "sweep", "--exhaustive", "3", "3")
        rows = json.loads(out)["rows"]
        for r in rows:
            if not r["acyclic"]:
                continue
            bt = BipartiteTournament.from_orientation(3, 3, r["mask"])
            assert r["cindex"] == acyclic_cindex(sink_analysis(bt.digraph))
            assert r["cperiod"] == 1

    def test_fig1_first_step_export(self, capsys, isolated_dirs):
        code, _, _ = _run(capsys, "export", "--fixture", "fig1_D", "--m", "1")
        assert code == EXIT_OK
        assert (isolated_dirs["export"] / "fig1_D_C1.dot").read_text().count("--") == 4
