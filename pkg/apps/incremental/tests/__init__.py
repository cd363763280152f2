"""Tests for the incremental bounded context."""
