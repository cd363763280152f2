"""Tests for the dml bounded context."""
