"""Domain layer for the workload bounded context."""
