"""Domain layer for the datagen bounded context."""
