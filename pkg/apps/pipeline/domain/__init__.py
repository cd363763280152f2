"""Domain layer for the pipeline bounded context."""
