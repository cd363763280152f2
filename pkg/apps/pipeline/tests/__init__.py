"""Tests for the pipeline bounded context."""
