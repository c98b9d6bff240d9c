"""Utility functions shared by the CLI and reports."""

import logging
from pathlib import Path

from dotenv import load_dotenv


def setup_environment() -> None:
    """Load environment variables (e.g. PLA_CONFIG) from a .env file."""
    load_dotenv()


def setup_logging(verbosity: int = 0) -> None:
    """Route package log records to stderr.

    Args:
        verbosity: 0 for warnings only, 1 for info, 2+ for debug.
    """
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def ensure_dir(path: str | Path) -> Path:
    """Ensure a directory exists.

    Args:
        path: Directory path.

    Returns:
        Path object for the directory.
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def parse_name_list(text: str) -> list[str]:
    """Split a comma-separated list, dropping blanks."""
    return [item.strip() for item in text.split(",") if item.strip()]
