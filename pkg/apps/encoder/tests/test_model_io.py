"""
Unit tests for encoder model files.
"""

import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.corpus.tests.factories import star_dataset
from apps.featurizer.domain.services import fit_normalization

from ..domain.models import EncoderConfig
from ..domain.services import (
    EncoderError,
    GINEncoder,
    TrainedEncoder,
    load_model,
    model_filename,
    save_model,
)


class TestModelFiles(SimpleTestCase):
    """Test cases for save_model and load_model."""

    def setUp(self) -> None:
        """Set up a trained-encoder stand-in and a scratch directory."""
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)
        self.d = star_dataset()
        features = fit_normalization([self.d, star_dataset(seed=1)])
        cfg = EncoderConfig(n_layers=2, hidden=8, embed_dim=4, init_seed=3)
        encoder = GINEncoder(cfg, features.feature_dim)
        encoder.params["gin1.eps"][0] = 0.25
        self.model = TrainedEncoder(encoder=encoder, features=features, w_a=0.9)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_round_trip(self) -> None:
        """Test parameters and embeddings survive bit-exactly."""
        path = save_model(self.dir / model_filename(0.9), self.model)
        loaded = load_model(path)

        self.assertEqual(loaded.w_a, 0.9)
        self.assertEqual(loaded.features, self.model.features)
        self.assertEqual(loaded.encoder.cfg, self.model.encoder.cfg)
        for name, value in self.model.encoder.params.items():
            np.testing.assert_array_equal(loaded.encoder.params[name], value)
        np.testing.assert_array_equal(
            loaded.embed(self.d).x, self.model.embed(self.d).x
        )

    def test_byte_identical(self) -> None:
        """Test equal parameters give equal files."""
        a = save_model(self.dir / "a.json", self.model)
        b = save_model(self.dir / "b.json", self.model)
        self.assertEqual(a.read_bytes(), b.read_bytes())

    def test_filename(self) -> None:
        """Test the per-weight file name."""
        self.assertEqual(model_filename(1.0), "encoder_wa_1.00.json")
        self.assertEqual(model_filename(0.3), "encoder_wa_0.30.json")

    def test_missing_file(self) -> None:
        """Test loading a missing file."""
        with self.assertRaises(EncoderError):
            load_model(self.dir / "absent.json")

    def test_wrong_version(self) -> None:
        """Test files of another format version are rejected."""
        path = save_model(self.dir / "m.json", self.model)
        payload = json.loads(path.read_text())
        payload["format_version"] = 99
        path.write_text(json.dumps(payload))
        with self.assertRaises(EncoderError):
            load_model(path)

    def test_parameters_must_fit_config(self) -> None:
        """Test a missing parameter array is rejected."""
        path = save_model(self.dir / "m.json", self.model)
        payload = json.loads(path.read_text())
        del payload["params"]["out.b"]
        path.write_text(json.dumps(payload))
        with self.assertRaises(EncoderError):
            load_model(path)

    def test_malformed_json(self) -> None:
        """Test a truncated file."""
        path = self.dir / "m.json"
        path.write_text("{")
        with self.assertRaises(EncoderError):
            load_model(path)
