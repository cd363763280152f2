"""
Feature graphs and the configuration that shapes and normalizes them.

Vertex row layout for ``m`` columns and ``k`` statistics, length (k+m)*m + 2:

    [col0 stats (k) | col1 stats (k) | ... | col(m-1) stats (k)
     | correlation block m*m, row-major | n_rows | n_cols]

Columns missing from a table are zero padded in place, so an index always
means the same feature for every dataset featurized with the same ``m``.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

STAT_NAMES = ("skew", "ndv", "kurtosis", "range", "std", "mean")


def feature_names(m_max_cols: int) -> list[str]:
    """Name of every vertex feature position for ``m_max_cols`` columns."""
    names = [f"col{c}.{s}" for c in range(m_max_cols) for s in STAT_NAMES]
    names += [f"corr{i}_{j}" for i in range(m_max_cols) for j in range(m_max_cols)]
    return [*names, "n_rows", "n_cols"]


class FeatureConfig(BaseModel):
    """Shape bounds and per-dimension min-max statistics of a training corpus."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m_max_cols: int = Field(..., ge=1, description="Columns per table, m")
    k_features: Literal[6] = Field(6, description="Statistics per column, k")
    n_max_tables: int = Field(..., ge=1, description="Tables per dataset")
    norm_min: list[float] = Field(..., description="Per-dimension corpus minimum")
    norm_max: list[float] = Field(..., description="Per-dimension corpus maximum")

    @property
    def feature_dim(self) -> int:
        return (self.k_features + self.m_max_cols) * self.m_max_cols + 2

    @model_validator(mode="after")
    def stats_must_fit_layout(self) -> "FeatureConfig":
        for name in ("norm_min", "norm_max"):
            if len(getattr(self, name)) != self.feature_dim:
                raise ValueError(
                    f"{name} has {len(getattr(self, name))} entries, layout "
                    f"needs {self.feature_dim}"
                )
        if any(lo > hi for lo, hi in zip(self.norm_min, self.norm_max, strict=True)):
            raise ValueError("norm_min exceeds norm_max in some dimension")
        return self


@dataclass(frozen=True, eq=False)
class FeatureGraph:
    """
    Vertices ``V`` [n_tables, feature_dim] and edge weights ``E``
    [n_tables, n_tables]; ``E[i, j]`` is set where table j holds an FK to the
    PK of table i.
    """

    V: np.ndarray
    E: np.ndarray
    dataset_id: str = ""

    def __post_init__(self) -> None:
        n = self.V.shape[0]
        if self.V.ndim != 2 or self.E.shape != (n, n):
            raise ValueError(
                f"Feature graph shapes disagree: V {self.V.shape}, E {self.E.shape}"
            )

    @property
    def n_vertices(self) -> int:
        return int(self.V.shape[0])

    @property
    def feature_dim(self) -> int:
        return int(self.V.shape[1])

    def padded(self, n: int) -> "FeatureGraph":
        """Zero rows in V and zero rows and columns in E up to ``n`` vertices."""
        extra = n - self.n_vertices
        if extra < 0:
            raise ValueError(f"Cannot pad {self.n_vertices} vertices down to {n}")
        return FeatureGraph(
            V=np.pad(self.V, ((0, extra), (0, 0))),
            E=np.pad(self.E, ((0, extra), (0, extra))),
            dataset_id=self.dataset_id,
        )
