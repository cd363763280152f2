"""Domain models for the datagen bounded context."""

from .gen_params import REGIME_PRESETS, GenParams

__all__ = ["GenParams", "REGIME_PRESETS"]
