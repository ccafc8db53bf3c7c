"""Configuration loader for complab."""

import os
from pathlib import Path

import yaml
from dotenv import load_dotenv

from src.core.errors import ConfigError

SAFETY_CAP_ENV = "COMPLAB_SAFETY_CAP"


def get_project_root() -> Path:
    """Return the project root directory."""
    return Path(__file__).resolve().parent.parent.parent


def load_yaml(filepath: Path) -> dict:
    """Load a YAML file and return as dict."""
    with open(filepath, "r") as f:
        return yaml.safe_load(f) or {}


def load_settings() -> dict:
    """Load global settings from config/settings.yaml.

    Also loads a project-level .env so environment overrides are visible to callers.
    """
    root = get_project_root()
    load_dotenv(root / ".env", override=False)
    path = root / "config" / "settings.yaml"
    if not path.exists():
        return {}
    return load_yaml(path)


def resolve_path(relative_path: str, settings: dict | None = None) -> Path:
    """Resolve a relative path from settings to an absolute path."""
    path = Path(relative_path)
    if path.is_absolute():
        return path
    return get_project_root() / path


def _get_dir(key: str, default: str, settings: dict | None) -> Path:
    if settings is None:
        settings = load_settings()
    path = resolve_path(settings.get("paths", {}).get(key, default))
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_logs_dir(settings: dict | None = None) -> Path:
    """Return the logs directory path, creating it if needed."""
    return _get_dir("logs_dir", "logs", settings)


def get_witness_dir(settings: dict | None = None) -> Path:
    """Return the directory for failing-instance witnesses, creating it if needed."""
    return _get_dir("witness_dir", "witnesses", settings)


def get_export_dir(settings: dict | None = None) -> Path:
    """Return the default DOT export directory, creating it if needed."""
    return _get_dir("export_dir", "export", settings)


def _positive_int(value, source: str) -> int:
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{source}: expected a positive integer, got {value!r}") from None
    if parsed < 1:
        raise ConfigError(f"{source}: expected a positive integer, got {parsed}")
    return parsed


def get_safety_cap(n: int, settings: dict | None = None, override: int | None = None) -> int:
    """Return the matrix-power safety cap for an n-vertex digraph.

    Resolution order: explicit override > COMPLAB_SAFETY_CAP > settings > 2·n² + 16.
    """
    if override is not None:
        return _positive_int(override, "--safety-cap")
    if settings is None:
        settings = load_settings()
    env_value = os.environ.get(SAFETY_CAP_ENV, "").strip()
    if env_value:
        return _positive_int(env_value, SAFETY_CAP_ENV)
    configured = settings.get("competition", {}).get("safety_cap")
    if configured is not None:
        return _positive_int(configured, "competition.safety_cap")
    return 2 * n * n + 16


def get_default_m_max(zeta: int, settings: dict | None = None) -> int:
    """Return the verification horizon: settings value or max(zeta, 4) + 2."""
    if settings is None:
        settings = load_settings()
    configured = settings.get("verify", {}).get("m_max")
    if configured is not None:
        return _positive_int(configured, "verify.m_max")
    return max(zeta, 4) + 2
