"""
Report storage on the local filesystem.

Usage:
    from runner.report_storage import get_report_storage
    storage = get_report_storage()

    # Save (atomic: written to a temp file in the same directory, then renamed)
    path = storage.save("triple-well-resonance.csv", text)

    # Load
    text = storage.load("triple-well-resonance.csv")   # None if not found
"""
import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from loguru import logger

from config.settings import settings


class ReportStorage:
    """
    Flat report files under one directory (settings.REPORT_DIR by default).
    Absolute paths passed to save/load bypass the directory.
    """

    def __init__(self, root: Union[str, Path, None] = None):
        self.root = Path(root or settings.REPORT_DIR)

    # ------------------------------------------------------------------ #
    # Public API
    # ------------------------------------------------------------------ #

    def path_for(self, filename: Union[str, Path]) -> Path:
        path = Path(filename)
        return path if path.is_absolute() else self.root / path

    def save(self, filename: Union[str, Path], text: str) -> Path:
        """Write text atomically; returns the final path. Raises OSError on failure."""
        target = self.path_for(filename)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        logger.info(f"ReportStorage: saved {target}")
        return target

    def load(self, filename: Union[str, Path]) -> Optional[str]:
        """Report text, or None if not found."""
        target = self.path_for(filename)
        try:
            return target.read_text(encoding="utf-8")
        except FileNotFoundError:
            logger.warning(f"ReportStorage: not found: {target}")
            return None


# Module-level singleton
_storage_instance: Optional[ReportStorage] = None


def get_report_storage() -> ReportStorage:
    global _storage_instance
    if _storage_instance is None:
        _storage_instance = ReportStorage()
    return _storage_instance
