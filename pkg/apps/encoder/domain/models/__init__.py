"""Domain models for the encoder bounded context."""

from .encoder_config import EncoderConfig, Embedding
from .model_file import MODEL_FORMAT_VERSION, ArrayBlob, ModelFile

__all__ = [
    "ArrayBlob",
    "EncoderConfig",
    "Embedding",
    "MODEL_FORMAT_VERSION",
    "ModelFile",
]
