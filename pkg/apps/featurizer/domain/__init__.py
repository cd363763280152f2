"""Domain layer for the featurizer bounded context."""
