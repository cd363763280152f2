"""Domain services for the datagen bounded context."""

from .generation_service import (
    PK_COLUMN,
    GenerationError,
    gen_corpus,
    gen_multi_table,
    gen_regime_corpus,
    gen_single_table,
    inject_column_correlation,
    regime_of,
    sample_skewed_column,
)

__all__ = [
    "GenerationError",
    "PK_COLUMN",
    "gen_corpus",
    "gen_multi_table",
    "gen_regime_corpus",
    "gen_single_table",
    "inject_column_correlation",
    "regime_of",
    "sample_skewed_column",
]
