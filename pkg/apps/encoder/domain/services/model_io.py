"""
Reading and writing encoder model files.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from apps.corpus.domain.models import Dataset
from apps.featurizer.domain.models import FeatureConfig, FeatureGraph
from apps.featurizer.domain.services import build_feature_graph

from ..models import MODEL_FORMAT_VERSION, ArrayBlob, Embedding, ModelFile
from .gin import EncoderError, GINEncoder

logger = logging.getLogger(__name__)


def model_filename(w_a: float) -> str:
    return f"encoder_wa_{w_a:.2f}.json"


@dataclass
class TrainedEncoder:
    """An encoder with the feature layout and weight setting it serves."""

    encoder: GINEncoder
    features: FeatureConfig
    w_a: float

    def graph(self, d: Dataset) -> FeatureGraph:
        return build_feature_graph(d, self.features)

    def embed(self, d: Dataset) -> Embedding:
        return self.encoder.encode(self.graph(d))


def save_model(path: Path | str, model: TrainedEncoder) -> Path:
    """
    Write ``model`` as JSON. Parameters are stored in name order, so equal
    parameters give byte-identical files.
    """
    params = model.encoder.params
    blob = ModelFile(
        format_version=MODEL_FORMAT_VERSION,
        w_a=model.w_a,
        encoder=model.encoder.cfg,
        features=model.features,
        params={name: ArrayBlob.from_array(params[name]) for name in sorted(params)},
    )
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(blob.model_dump_json(indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise EncoderError(f"Failed to write model {target}: {e}") from e
    logger.info("Saved encoder for w_a=%.2f to %s", model.w_a, target)
    return target


def load_model(path: Path | str) -> TrainedEncoder:
    """
    Raises:
        EncoderError: If the file is missing, malformed, of another format
            version, or its parameters do not fit its configuration
    """
    source = Path(path)
    if not source.is_file():
        raise EncoderError(f"Model file {source} does not exist")
    try:
        blob = ModelFile.model_validate_json(source.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise EncoderError(f"Malformed model file {source}: {e}") from e
    if blob.format_version != MODEL_FORMAT_VERSION:
        raise EncoderError(
            f"{source} has format version {blob.format_version}, "
            f"expected {MODEL_FORMAT_VERSION}"
        )
    try:
        params = {name: a.to_array() for name, a in blob.params.items()}
    except ValueError as e:
        raise EncoderError(f"Corrupt parameter array in {source}: {e}") from e
    if not all(np.all(np.isfinite(a)) for a in params.values()):
        raise EncoderError(f"{source} holds non-finite parameters")
    encoder = GINEncoder(blob.encoder, blob.features.feature_dim, params)
    return TrainedEncoder(encoder=encoder, features=blob.features, w_a=blob.w_a)
