"""Domain layer for the advisor bounded context."""
