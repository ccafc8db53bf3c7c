"""Logging setup for complab."""

import logging
import sys

from src.utils.config_loader import get_logs_dir, load_settings


def setup_logger(name: str, level: int | None = None) -> logging.Logger:
    """Set up a logger with console (stderr) and optional file handlers.

    stdout is left alone so command output stays machine-readable.

    Args:
        name: Logger name (used as log filename).
        level: Logging level. Defaults to settings ``logging.level``.

    Returns:
        Configured logger instance.
    """
    logger = logging.getLogger(f"complab.{name}")
    if logger.handlers:
        return logger

    settings = load_settings()
    log_cfg = settings.get("logging", {})
    if level is None:
        level = logging.getLevelName(str(log_cfg.get("level", "INFO")).upper())
        if not isinstance(level, int):
            level = logging.INFO

    logger.setLevel(level)
    logger.propagate = False
    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Console handler
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    logger.addHandler(console)

    # File handler
    if log_cfg.get("file", True):
        try:
            logs_dir = get_logs_dir(settings)
            file_handler = logging.FileHandler(logs_dir / f"{name}.log")
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
        except OSError as e:
            logger.warning("File logging disabled for %s: %s", name, e)

    return logger


def set_global_level(level: int) -> None:
    """作成済みの complab.* ロガー全てにレベルを設定 (--verbose 用)。"""
    for name, obj in logging.Logger.manager.loggerDict.items():
        if name.startswith("complab.") and isinstance(obj, logging.Logger):
            obj.setLevel(level)
