"""Tests for the baselines bounded context."""
