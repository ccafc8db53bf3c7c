"""Shared fixtures and pytest configuration for complab tests."""

from __future__ import annotations

import pytest

from src.generators.fixtures import load_fixture
from src.utils.config_loader import SAFETY_CAP_ENV


# ---------------------------------------------------------------------------
#  Reference instances
# ---------------------------------------------------------------------------

@pytest.fixture
def fig1_d():
    """非巡回 (3,3)。W = {y3}, {x2,x3}, {y1,y2}, {x1}、ζ=3。"""
    return load_fixture("fig1_D")


@pytest.fixture
def fig1_dprime():
    """巡回 (3,3)。ζ=2、終端頂点 {x1,x2,y1,y2}。"""
    return load_fixture("fig1_Dprime")


@pytest.fixture
def fig2_d():
    """シンクなし (3,3)。cindex=4, cperiod=1。"""
    return load_fixture("fig2_D")


# ---------------------------------------------------------------------------
#  Settings / config fixtures
# ---------------------------------------------------------------------------

MOCK_SETTINGS = {
    "competition": {"safety_cap": None},
    "generators": {"sinkless_max_retries": 10000, "enumerate_max_cross_pairs": 20},
    "verify": {"m_max": None, "workers": 1},
    "sweep": {"samples": 50},
    "paths": {"logs_dir": "logs", "witness_dir": "witnesses", "export_dir": "export"},
    "logging": {"level": "INFO", "file": False},
}


@pytest.fixture
def mock_settings():
    return {k: dict(v) for k, v in MOCK_SETTINGS.items()}


@pytest.fixture(autouse=True)
def _no_safety_cap_env(monkeypatch):
    """外部環境の COMPLAB_SAFETY_CAP がテストに漏れないようにする。"""
    monkeypatch.delenv(SAFETY_CAP_ENV, raising=False)


# ---------------------------------------------------------------------------
#  Temp directory fixtures (for file I/O isolation)
# ---------------------------------------------------------------------------

@pytest.fixture
def isolated_dirs(tmp_path, mock_settings, monkeypatch):
    """witness/export を tmp_path 配下に向けた settings で CLI を動かす。"""
    witness_dir = tmp_path / "witnesses"
    export_dir = tmp_path / "export"
    settings = mock_settings
    settings["paths"] = {
        "logs_dir": str(tmp_path / "logs"),
        "witness_dir": str(witness_dir),
        "export_dir": str(export_dir),
    }
    monkeypatch.setattr("src.cli.main.load_settings", lambda: settings)
    return {
        "root": tmp_path,
        "witness": witness_dir,
        "export": export_dir,
        "settings": settings,
    }
