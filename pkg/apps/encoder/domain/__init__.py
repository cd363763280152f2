"""Domain layer for the encoder bounded context."""
