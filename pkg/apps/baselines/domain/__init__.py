"""Domain layer for the baselines bounded context."""
