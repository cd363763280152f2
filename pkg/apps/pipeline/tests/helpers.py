"""
A tiny run configuration that exercises the whole pipeline in seconds.
"""

import json
from pathlib import Path
from typing import Any

TINY_POOL = [
    {"id": "hist", "kind": "hist-avi", "family": "data_driven"},
    {
        "id": "sample",
        "kind": "sample-eval",
        "family": "data_driven",
        "hyperparams": {"rate": 0.5},
    },
    {"id": "linear", "kind": "qd-linear", "family": "query_driven"},
]


def tiny_config(**sections: Any) -> dict[str, Any]:
    config: dict[str, Any] = {
        "seed": 3,
        "jobs": 1,
        "latency_unit": "cost",
        "corpus": {"n_train": 6, "n_test": 3, "regimes": True, "rows_range": [40, 60]},
        "workload": {"n_train": 10, "n_test": 8, "pred_prob": 0.5},
        "pool": TINY_POOL,
        "encoder": {"n_layers": 2, "hidden": 8, "embed_dim": 4, "init_seed": 0},
        "dml": {"epochs": 3, "batch_size": 4, "lr": 0.01},
        "incremental": {"folds": 2, "extra_epochs": 2},
        "advisor": {"k": 2, "w_grid": [1.0]},
        "evaluation": {
            "strategies": ["advisor", "mlp", "rule", "rawknn", "oracle"],
            "mlp_epochs": 2,
        },
        "bench": {"ablation": False},
    }
    config.update(sections)
    return config


def write_config(directory: Path, **sections: Any) -> Path:
    path = directory / "config.json"
    path.write_text(json.dumps(tiny_config(**sections)), encoding="utf-8")
    return path
