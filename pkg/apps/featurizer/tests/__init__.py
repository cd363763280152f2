"""Tests for the featurizer bounded context."""
