"""
Directory of trained encoders, one per accuracy weight.
"""

import logging
import re
from pathlib import Path

from apps.encoder.domain.services import (
    TrainedEncoder,
    load_model,
    model_filename,
    save_model,
)

from .loss_service import TrainingError

logger = logging.getLogger(__name__)

WA_GRID = tuple(round(0.1 * i, 1) for i in range(11))

_MODEL_NAME = re.compile(r"^encoder_wa_(\d+\.\d+)\.json$")


class ModelNotFoundError(TrainingError):
    """Raised when the store has no encoder to serve a request."""

    pass


class ModelStore:
    """Encoders under ``root`` keyed by the ``w_a`` they were trained for."""

    def __init__(self, root: Path | str) -> None:
        self.root = Path(root)

    def path_for(self, w_a: float) -> Path:
        return self.root / model_filename(w_a)

    def save(self, model: TrainedEncoder) -> Path:
        return save_model(self.path_for(model.w_a), model)

    def available(self) -> list[float]:
        """Stored weights, ascending."""
        if not self.root.is_dir():
            return []
        found = []
        for path in self.root.iterdir():
            match = _MODEL_NAME.match(path.name)
            if match:
                found.append(float(match.group(1)))
        return sorted(found)

    def nearest_key(self, w_a: float) -> float:
        """Closest stored weight; the lower one on a tie."""
        keys = self.available()
        if not keys:
            raise ModelNotFoundError(f"No trained encoders under {self.root}")
        return min(keys, key=lambda k: (abs(k - w_a), k))

    def nearest(self, w_a: float) -> TrainedEncoder:
        key = self.nearest_key(w_a)
        if abs(key - w_a) > 1e-9:
            logger.info("No encoder for w_a=%.2f, serving w_a=%.2f", w_a, key)
        return load_model(self.path_for(key))
