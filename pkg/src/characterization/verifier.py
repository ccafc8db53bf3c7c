"""Per-instance verification: compute everything, run every applicable check."""

from __future__ import annotations

from dataclasses import dataclass, field

from src.characterization.checks import (
    CHECK_GROUPS,
    FAIL,
    CheckResult,
    build_evidence,
    run_checks,
)
from src.competition.profile import CompetitionProfile, competition_profile
from src.core.digraph import BipartiteTournament
from src.core.io import tournament_to_json
from src.sinks.sink_analysis import SinkAnalysis, sink_analysis
from src.utils.config_loader import get_default_m_max, get_safety_cap
from src.utils.logger import setup_logger

logger = setup_logger("verifier")


@dataclass(frozen=True)
class VerificationReport:
    bt: BipartiteTournament = field(repr=False)
    analysis: SinkAnalysis = field(repr=False)
    profile: CompetitionProfile
    m_max: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "instance": tournament_to_json(self.bt),
            "zeta": self.analysis.zeta,
            "acyclic": self.analysis.acyclic,
            "profile": self.profile.to_dict(),
            "m_max": self.m_max,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self) -> str:
        header = (
            f"n1={self.bt.n1} n2={self.bt.n2} zeta={self.analysis.zeta} "
            f"acyclic={'yes' if self.analysis.acyclic else 'no'} "
            f"cindex={self.profile.cindex} cperiod={self.profile.cperiod} m_max={self.m_max}"
        )
        width = max(len("CHECK"), *(len(c.name) for c in self.checks))
        lines = [header]
        if self.analysis.stopping_note:
            lines.append(self.analysis.stopping_note)
        lines += ["", f"{'CHECK'.ljust(width)}  STATUS"]
        for c in self.checks:
            lines.append(f"{c.name.ljust(width)}  {c.status}")
            if c.failed and c.witness:
                lines.append(f"{'':{width}}    witness: {c.witness}")
        summary = "ALL PASS" if self.passed else f"{len(self.failures)} FAILED"
        lines += ["", summary]
        return "\n".join(lines) + "\n"


def verify_instance(
    bt: BipartiteTournament,
    m_max: int | None = None,
    safety_cap: int | None = None,
    groups: tuple[str, ...] = tuple(CHECK_GROUPS),
    settings: dict | None = None,
) -> VerificationReport:
    """Run the selected check groups on bt.

    Failures are report entries, never exceptions. ``m_max`` defaults to
    verify.m_max or max(ζ, 4) + 2; it must be >= 2.
    """
    analysis = sink_analysis(bt.digraph)
    if m_max is None:
        m_max = get_default_m_max(analysis.zeta, settings)
    if m_max < 2:
        raise ValueError(f"m_max must be >= 2, got {m_max}")
    if safety_cap is None:
        safety_cap = get_safety_cap(bt.n, settings)

    profile = competition_profile(bt.digraph, safety_cap)
    evidence = build_evidence(bt, analysis, profile, m_max)
    results = tuple(run_checks(evidence, groups))

    report = VerificationReport(bt, analysis, profile, m_max, results)
    for failure in report.failures:
        logger.warning("Check failed: %s (orientation mask %d): %s", failure.name, bt.orientation_mask(), failure.witness)
    return report
