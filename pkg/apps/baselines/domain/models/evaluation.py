"""
Evaluation outcomes per strategy, accuracy weight and dataset.
"""

from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

EPSILONS = (0.1, 0.15, 0.2)


@dataclass(frozen=True)
class EvalRow:
    strategy: str
    w_a: float
    dataset_id: str
    chosen: str
    optimum: str
    d_error: float


@dataclass(frozen=True)
class SelectionTiming:
    """Wall-clock of one selection; kept apart from the deterministic rows."""

    strategy: str
    w_a: float
    dataset_id: str
    seconds: float


class StrategySummary(BaseModel):
    """Aggregate D-error of one strategy at one ``w_a``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    strategy: str
    w_a: float
    n: int = Field(..., ge=1, description="Evaluated datasets")
    mean_derror: float = Field(..., ge=0.0)
    median_derror: float = Field(..., ge=0.0)
    p90_derror: float = Field(..., ge=0.0)
    max_derror: float = Field(..., ge=0.0)
    accuracy: dict[str, float] = Field(
        ..., description="Share of datasets with D-error <= epsilon, keyed by epsilon"
    )


@dataclass
class EvalReport:
    rows: list[EvalRow] = field(default_factory=list)
    summaries: list[StrategySummary] = field(default_factory=list)
    timings: list[SelectionTiming] = field(default_factory=list)

    def summary(self, strategy: str, w_a: float) -> StrategySummary:
        for s in self.summaries:
            if s.strategy == strategy and s.w_a == w_a:
                return s
        raise KeyError(f"No summary for strategy '{strategy}' at w_a={w_a}")

    @property
    def strategies(self) -> list[str]:
        return list(dict.fromkeys(s.strategy for s in self.summaries))
