"""Tests for the advisor bounded context."""
