"""Atomic file operations with file locking."""

import fcntl
import json
import tempfile
from pathlib import Path


def atomic_write_text(filepath: Path, text: str) -> None:
    """Write text atomically using temp file + rename.

    Uses fcntl.flock for advisory locking and writes to a temp file
    first, then renames to prevent partial reads.

    Args:
        filepath: Target file path.
        text: Content to write.
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)

    # Write to temp file in same directory, then atomic rename
    fd, tmp_path = tempfile.mkstemp(
        dir=filepath.parent, suffix=".tmp", prefix=".complab_"
    )
    try:
        with open(fd, "w", encoding="utf-8") as f:
            fcntl.flock(f.fileno(), fcntl.LOCK_EX)
            f.write(text)
            f.flush()
            fcntl.flock(f.fileno(), fcntl.LOCK_UN)
        Path(tmp_path).rename(filepath)
    except Exception:
        Path(tmp_path).unlink(missing_ok=True)
        raise


def atomic_write_json(filepath: Path, data: dict | list) -> None:
    """Serialize data as indented JSON and write it atomically."""
    atomic_write_text(filepath, json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def read_json(filepath: Path) -> dict | list:
    """Read a JSON file with shared lock.

    Args:
        filepath: JSON file to read.

    Returns:
        Parsed JSON value.

    Raises:
        FileNotFoundError: If file doesn't exist.
        json.JSONDecodeError: If the content is not JSON.
    """
    filepath = Path(filepath)
    with open(filepath, "r", encoding="utf-8") as f:
        fcntl.flock(f.fileno(), fcntl.LOCK_SH)
        try:
            data = json.load(f)
        finally:
            fcntl.flock(f.fileno(), fcntl.LOCK_UN)
    return data
