"""Tests for degloci."""
