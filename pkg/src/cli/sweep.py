"""Sweep: 全列挙またはサンプリングした二部トーナメントをまとめて集計。

SweepJob は小さな frozen レコードで、worker プロセスへそのまま pickle される。
結果は常に instance ID 順で返る。
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable, TypeVar

from src.characterization.checks import CHECK_GROUPS
from src.characterization.prediction import (
    ACYCLIC,
    CYCLIC_ZETA0,
    CYCLIC_ZETA1,
    CYCLIC_ZETA2_PLUS,
)
from src.characterization.structure import classify_structure
from src.characterization.verifier import verify_instance
from src.competition.profile import competition_profile
from src.core.digraph import BipartiteTournament
from src.generators.generators import (
    DEFAULT_SINKLESS_RETRIES,
    SINKLESS,
    UNIFORM,
    GenSpec,
    random_acyclic_bipartite_tournament,
    random_bipartite_tournament,
    random_sinkless_bipartite_tournament,
)
from src.sinks.sink_analysis import SinkAnalysis, sink_analysis

T = TypeVar("T")
R = TypeVar("R")

ROW_FIELDS = ["id", "n1", "n2", "mask", "zeta", "acyclic", "class", "cindex", "cperiod", "part1_shape", "part2_shape"]


@dataclass(frozen=True)
class SweepJob:
    """1 インスタンス分のジョブ。orientation mask か seed 付き生成のどちらか。"""

    instance_id: int
    n1: int
    n2: int
    safety_cap: int
    mask: int | None = None
    seed: int | None = None
    mode: str = UNIFORM
    sinkless_retries: int = DEFAULT_SINKLESS_RETRIES

    def build(self) -> BipartiteTournament:
        if self.mask is not None:
            return BipartiteTournament.from_orientation(self.n1, self.n2, self.mask)
        spec = GenSpec(self.n1, self.n2, self.seed, self.mode)
        if self.mode == SINKLESS:
            return random_sinkless_bipartite_tournament(spec, max_retries=self.sinkless_retries)
        if self.mode == UNIFORM:
            return random_bipartite_tournament(spec)
        return random_acyclic_bipartite_tournament(spec)


def instance_class(a: SinkAnalysis) -> str:
    if a.acyclic:
        return ACYCLIC
    if a.zeta == 0:
        return CYCLIC_ZETA0
    if a.zeta == 1:
        return CYCLIC_ZETA1
    return CYCLIC_ZETA2_PLUS


def sweep_row(job: SweepJob) -> dict:
    """Per-instance row; part shapes are read at m = max(cindex, 2)."""
    bt = job.build()
    a = sink_analysis(bt.digraph)
    profile = competition_profile(bt.digraph, job.safety_cap)
    g = profile.graph_at(max(profile.cindex, 2))
    return {
        "id": job.instance_id,
        "n1": bt.n1,
        "n2": bt.n2,
        "mask": bt.orientation_mask(),
        "zeta": a.zeta,
        "acyclic": a.acyclic,
        "class": instance_class(a),
        "cindex": profile.cindex,
        "cperiod": profile.cperiod,
        "part1_shape": classify_structure(g, bt.part1).label,
        "part2_shape": classify_structure(g, bt.part2).label,
    }


def verify_job(
    job: SweepJob,
    m_max: int | None = None,
    groups: tuple[str, ...] = tuple(CHECK_GROUPS),
    settings: dict | None = None,
) -> dict:
    """Verification outcome for one job, kept small for inter-process transfer."""
    bt = job.build()
    report = verify_instance(bt, m_max=m_max, safety_cap=job.safety_cap, groups=groups, settings=settings)
    return {
        "id": job.instance_id,
        "mask": bt.orientation_mask(),
        "acyclic": report.analysis.acyclic,
        "passed": report.passed,
        "failures": [c.to_dict() for c in report.failures],
    }


def run_jobs(func: Callable[[T], R], jobs: Iterable[T], workers: int = 1, chunksize: int = 64) -> list[R]:
    """全ジョブに func を適用し、ジョブ順で返す。workers > 1 ならプロセスプールを使う。"""
    if workers <= 1:
        return [func(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs, chunksize=chunksize))


def run_sweep(jobs: Iterable[SweepJob], workers: int = 1) -> list[dict]:
    rows = run_jobs(sweep_row, jobs, workers)
    return sorted(rows, key=lambda r: r["id"])


def run_verification(
    jobs: Iterable[SweepJob],
    workers: int = 1,
    m_max: int | None = None,
    groups: tuple[str, ...] = tuple(CHECK_GROUPS),
    settings: dict | None = None,
) -> list[dict]:
    func = partial(verify_job, m_max=m_max, groups=groups, settings=settings)
    return sorted(run_jobs(func, jobs, workers), key=lambda r: r["id"])


# ─── aggregation ─────────────────────────────────────────


def aggregate(rows: list[dict]) -> dict:
    """(class, cindex, cperiod) 別とパート形ラベル別の頻度表を作る。"""
    by_profile: Counter = Counter()
    by_shape: Counter = Counter()
    by_class: Counter = Counter()
    for r in rows:
        by_class[r["class"]] += 1
        by_profile[(r["class"], r["cindex"], r["cperiod"])] += 1
        by_shape[(r["class"], r["part1_shape"], r["part2_shape"])] += 1

    zeta1 = [r for r in rows if r["class"] == CYCLIC_ZETA1]
    return {
        "instances": len(rows),
        "by_class": dict(sorted(by_class.items())),
        "by_profile": [
            {"class": c, "cindex": q, "cperiod": p, "count": n}
            for (c, q, p), n in sorted(by_profile.items())
        ],
        "by_shape": [
            {"class": c, "part1_shape": s1, "part2_shape": s2, "count": n}
            for (c, s1, s2), n in sorted(by_shape.items())
        ],
        "zeta1_period_two": sum(1 for r in zeta1 if r["cperiod"] == 2),
        "zeta1_total": len(zeta1),
    }


def rows_to_csv(rows: list[dict], summary: dict | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: r[k] for k in ROW_FIELDS})
    if summary is not None:
        buf.write("\n")
        table = csv.writer(buf, lineterminator="\n")
        table.writerow(["class", "cindex", "cperiod", "count"])
        for entry in summary["by_profile"]:
            table.writerow([entry["class"], entry["cindex"], entry["cperiod"], entry["count"]])
    return buf.getvalue()
