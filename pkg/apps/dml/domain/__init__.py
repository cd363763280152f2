"""Domain layer for the dml bounded context."""
