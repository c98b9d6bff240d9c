"""Tests for utility functions."""

import logging

from wavepla.utils import ensure_dir, parse_name_list, setup_logging


class TestParseNameList:
    """Tests for comma-separated lists."""

    def test_basic(self):
        """Splits and strips names."""
        assert parse_name_list("A, B ,C") == ["A", "B", "C"]

    def test_blanks_dropped(self):
        """Empty items are ignored."""
        assert parse_name_list("A,,B,") == ["A", "B"]
        assert parse_name_list("") == []


class TestEnsureDir:
    """Tests for directory creation."""

    def test_creates_nested(self, tmp_path):
        """Missing parents are created."""
        target = ensure_dir(tmp_path / "a" / "b")
        assert target.is_dir()

    def test_existing(self, tmp_path):
        """An existing directory is left alone."""
        assert ensure_dir(tmp_path) == tmp_path


class TestSetupLogging:
    """Tests for log level selection."""

    def test_levels(self, monkeypatch):
        """-v selects info, -vv debug."""
        seen = []
        monkeypatch.setattr(logging, "basicConfig", lambda **kw: seen.append(kw["level"]))
        for verbosity in (0, 1, 2):
            setup_logging(verbosity)
        assert seen == [logging.WARNING, logging.INFO, logging.DEBUG]
