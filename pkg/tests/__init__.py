"""Tests for gcx."""
