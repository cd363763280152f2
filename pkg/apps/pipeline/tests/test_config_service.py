"""
Unit tests for run configuration loading and resolution.
"""

import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings
from pydantic import ValidationError

from ..domain.models import ALL_STRATEGIES, RunConfig
from ..domain.services import PipelineError, load_run_config, resolve
from .helpers import write_config


class TestLoadRunConfig(SimpleTestCase):
    """Test cases for load_run_config."""

    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.root = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_defaults_without_file(self) -> None:
        """Test every section has a default."""
        cfg = load_run_config()

        self.assertIsNone(cfg.run_dir)
        self.assertEqual(cfg.corpus.n_train, 200)
        self.assertEqual(cfg.corpus.n_test, 40)
        self.assertEqual(cfg.advisor.k, 2)
        self.assertEqual(tuple(cfg.evaluation.strategies), ALL_STRATEGIES)
        self.assertEqual(len(cfg.estimator_ids), 5)

    def test_file_values(self) -> None:
        """Test a config file is read section by section."""
        cfg = load_run_config(write_config(self.root))

        self.assertEqual(cfg.seed, 3)
        self.assertEqual(cfg.corpus.rows_range, (40, 60))
        self.assertEqual(cfg.estimator_ids, ("hist", "sample", "linear"))

    def test_overrides_win_over_file(self) -> None:
        """Test dotted overrides and skipped None values."""
        cfg = load_run_config(
            write_config(self.root),
            {"dml.epochs": 7, "seed": None, "advisor.w_grid": [0.2, 0.8]},
        )

        self.assertEqual(cfg.dml.epochs, 7)
        self.assertEqual(cfg.dml.batch_size, 4)
        self.assertEqual(cfg.seed, 3)
        self.assertEqual(cfg.advisor.w_grid, [0.2, 0.8])

    def test_unknown_key_rejected(self) -> None:
        """Test extra keys fail validation at any depth."""
        with self.assertRaises(ValidationError):
            load_run_config(overrides={"dml.momentum": 0.9})
        with self.assertRaises(ValidationError):
            load_run_config(overrides={"colour": "blue"})

    def test_override_through_a_value(self) -> None:
        """Test a dotted key cannot descend into a scalar."""
        with self.assertRaises(PipelineError):
            load_run_config(overrides={"seed": 1, "seed.inner": 2})

    def test_missing_file(self) -> None:
        """Test a missing config file."""
        with self.assertRaises(PipelineError):
            load_run_config(self.root / "absent.json")

    def test_malformed_file(self) -> None:
        """Test invalid JSON and a non-object document."""
        bad = self.root / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with self.assertRaises(PipelineError):
            load_run_config(bad)

        listed = self.root / "list.json"
        listed.write_text(json.dumps([1, 2]), encoding="utf-8")
        with self.assertRaises(PipelineError):
            load_run_config(listed)

    def test_invalid_values(self) -> None:
        """Test field invariants surface as ValidationError."""
        invalid = [
            {"advisor.w_grid": [1.5]},
            {"advisor.w_grid": []},
            {"advisor.k": 0},
            {"evaluation.strategies": ["advisor", "advisor"]},
            {"evaluation.strategies": ["psychic"]},
            {"evaluation.strategies": ["fixed:nope"]},
            {"evaluation.strategies": ["advisor@0"]},
            {"evaluation.k_sweep": [0, 2]},
            {"bench.il_fractions": [0.0]},
            {"latency_unit": "hours"},
        ]
        for overrides in invalid:
            with self.subTest(overrides=overrides), self.assertRaises(ValidationError):
                load_run_config(overrides=overrides)

    def test_parameterized_strategies(self) -> None:
        """Test fixed members, swept advisors and a normalized sweep."""
        cfg = load_run_config(
            write_config(self.root),
            {
                "evaluation.strategies": ["fixed:linear", "advisor@3", "ensemble"],
                "evaluation.k_sweep": [3, 1, 3],
            },
        )

        self.assertEqual(
            cfg.evaluation.strategies, ["fixed:linear", "advisor@3", "ensemble"]
        )
        self.assertEqual(cfg.evaluation.k_sweep, [1, 3])

    def test_pool_needs_two_distinct_members(self) -> None:
        """Test the pool validator."""
        one = [{"id": "hist", "kind": "hist-avi", "family": "data_driven"}]
        with self.assertRaises(ValidationError):
            load_run_config(overrides={"pool": one})
        with self.assertRaises(ValidationError):
            load_run_config(overrides={"pool": one * 2})


class TestResolve(SimpleTestCase):
    """Test cases for resolve."""

    @override_settings(
        ADVISOR={"RUN_DIR": "/tmp/ce-runs", "LATENCY_UNIT": "ms", "JOBS": 4, "SEED": 9}
    )
    def test_settings_fill_unset_fields(self) -> None:
        """Test environment defaults apply only where the config is silent."""
        cfg = resolve(RunConfig(seed=2))

        self.assertEqual(cfg.run_dir, Path("/tmp/ce-runs"))
        self.assertEqual(cfg.seed, 2)
        self.assertEqual(cfg.jobs, 4)
        self.assertEqual(cfg.latency_unit, "ms")

    def test_resolved_config_is_complete(self) -> None:
        """Test testing settings produce a fully resolved config."""
        cfg = resolve(RunConfig())

        self.assertIsNotNone(cfg.run_dir)
        self.assertEqual(cfg.seed, 0)
        self.assertEqual(cfg.jobs, 1)
        self.assertEqual(cfg.latency_unit, "cost")
