"""Domain layer for the incremental bounded context."""
