"""
Run configuration: one JSON document, every section optional.
"""

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from apps.corpus.domain.models import LatencyUnit
from apps.datagen.domain.models import GenParams
from apps.dml.domain.models import DmlConfig
from apps.encoder.domain.models import EncoderConfig
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import reference_pool
from apps.incremental.domain.models import IncrementalConfig
from apps.workload.domain.models import WorkloadParams

ALL_STRATEGIES: tuple[str, ...] = (
    "advisor",
    "mlp",
    "rule",
    "rawknn",
    "sampling",
    "learning-all",
    "fixed",
    "ensemble",
    "oracle",
)

FIXED_PREFIX = "fixed:"
SWEEP_PREFIX = "advisor@"


def check_strategy_name(name: str) -> str:
    """
    Accept a base strategy, ``fixed:<estimator id>`` or ``advisor@<k>``.

    Raises:
        ValueError: For any other name
    """
    if name in ALL_STRATEGIES:
        return name
    if name.startswith(FIXED_PREFIX) and len(name) > len(FIXED_PREFIX):
        return name
    if name.startswith(SWEEP_PREFIX):
        k = name[len(SWEEP_PREFIX) :]
        if k.isdigit() and int(k) >= 1:
            return name
    raise ValueError(
        f"Unknown strategy '{name}' (known: {', '.join(ALL_STRATEGIES)}, "
        f"{FIXED_PREFIX}<id>, {SWEEP_PREFIX}<k>)"
    )


class CorpusConfig(BaseModel):
    """How ``gen-data`` builds the train and test corpora."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_train: int = Field(200, ge=1, description="Training datasets")
    n_test: int = Field(40, ge=0, description="Held-out datasets")
    regimes: bool = Field(
        True, description="Cycle through the regime presets instead of ``gen``"
    )
    rows_range: tuple[int, int] = Field(
        (500, 1500), description="Rows per table when ``regimes`` is set"
    )
    gen: GenParams = Field(
        default_factory=GenParams, description="Generator ranges without regimes"
    )


class AdvisorConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(2, ge=1, description="Neighbors averaged per recommendation")
    w_grid: list[float] = Field(
        default_factory=lambda: [1.0], description="Weights to train and evaluate"
    )

    @field_validator("w_grid")
    @classmethod
    def weights_must_be_valid(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("At least one w_a is required")
        for w in v:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"w_a={w} must lie in [0, 1]")
        return v


class EvalConfig(BaseModel):
    """Strategies compared by ``evaluate`` and ``bench``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    strategies: list[str] = Field(
        default_factory=lambda: list(ALL_STRATEGIES), description="Strategy names"
    )
    k_sweep: list[int] = Field(
        default_factory=lambda: [1, 2, 3, 4, 5],
        description="Neighbor counts the advisor is swept over",
    )
    sample_rate: float = Field(
        0.1, gt=0.0, le=1.0, description="Row share the sampling strategy labels"
    )
    mlp_epochs: int | None = Field(
        None, ge=1, description="MLP baseline epochs; defaults to dml.epochs"
    )

    @field_validator("strategies")
    @classmethod
    def strategies_must_be_known(cls, v: list[str]) -> list[str]:
        if len(set(v)) != len(v):
            raise ValueError(f"Duplicate strategies: {v}")
        return [check_strategy_name(name) for name in v]

    @field_validator("k_sweep")
    @classmethod
    def ks_must_be_positive(cls, v: list[int]) -> list[int]:
        if any(k < 1 for k in v):
            raise ValueError(f"Every swept k must be at least 1, got {v}")
        return sorted(set(v))


class BenchConfig(BaseModel):
    """Extras of the end-to-end ``bench`` run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ablation: bool = Field(
        True, description="Also train basic-loss encoders and evaluate them"
    )
    k_sweep: bool = Field(True, description="Also evaluate the advisor per swept k")
    incremental_ablation: bool = Field(
        False, description="Also compare incremental learning variants"
    )
    il_fractions: list[float] = Field(
        default_factory=lambda: [0.5, 0.7, 1.0],
        description="Shares of the training split the variants are compared on",
    )

    @field_validator("il_fractions")
    @classmethod
    def fractions_must_be_shares(cls, v: list[float]) -> list[float]:
        if not v or any(not 0.0 < f <= 1.0 for f in v):
            raise ValueError(f"Fractions must lie in (0, 1], got {v}")
        return v


class RunConfig(BaseModel):
    """
    Everything a pipeline run depends on. Fields left as ``None`` fall back to
    the ``ADVISOR`` settings.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    run_dir: Path | None = Field(None, description="Root of every run artifact")
    seed: int | None = Field(None, ge=0, description="Base seed of the run")
    jobs: int | None = Field(None, ge=1, description="Dataset-level workers")
    latency_unit: LatencyUnit | None = Field(
        None, description="'cost' for deterministic units, 'ms' for wall-clock"
    )
    corpus: CorpusConfig = Field(default_factory=CorpusConfig)
    workload: WorkloadParams = Field(default_factory=WorkloadParams)
    pool: list[EstimatorSpec] = Field(
        default_factory=reference_pool, description="Candidate estimators"
    )
    encoder: EncoderConfig = Field(default_factory=EncoderConfig)
    dml: DmlConfig = Field(default_factory=DmlConfig)
    incremental: IncrementalConfig = Field(default_factory=IncrementalConfig)
    advisor: AdvisorConfig = Field(default_factory=AdvisorConfig)
    evaluation: EvalConfig = Field(default_factory=EvalConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)

    @field_validator("pool")
    @classmethod
    def pool_must_have_two_members(cls, v: list[EstimatorSpec]) -> list[EstimatorSpec]:
        if len(v) < 2:
            raise ValueError("The pool needs at least two estimators to compare")
        ids = [s.id for s in v]
        if len(set(ids)) != len(ids):
            raise ValueError(f"Duplicate estimator ids in pool: {ids}")
        return v

    @model_validator(mode="after")
    def fixed_strategies_must_name_members(self) -> "RunConfig":
        ids = set(self.estimator_ids)
        for name in self.evaluation.strategies:
            if name.startswith(FIXED_PREFIX) and name[len(FIXED_PREFIX) :] not in ids:
                raise ValueError(f"Strategy {name} names no pool member")
        return self

    @property
    def estimator_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.pool)
