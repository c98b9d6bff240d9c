"""Tests for the wavepla package."""
