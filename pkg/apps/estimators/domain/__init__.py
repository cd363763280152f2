"""Domain layer for the estimators bounded context."""
