"""Tests for Luma API."""
