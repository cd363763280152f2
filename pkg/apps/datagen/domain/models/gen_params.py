"""
Generation parameters for synthetic datasets.
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GenParams(BaseModel):
    """Parameter ranges a generated dataset draws its shape and statistics from."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_tables: int = Field(1, ge=1, description="Tables per dataset")
    rows_range: tuple[int, int] = Field(
        (500, 2000), description="Inclusive range of rows per table"
    )
    cols_range: tuple[int, int] = Field(
        (2, 4), description="Inclusive range of attribute columns per table"
    )
    domain_size: int = Field(100, ge=2, description="Values are drawn from [1, d]")
    skew_range: tuple[float, float] = Field(
        (0.0, 1.0), description="Per-column skew drawn uniformly from this range"
    )
    corr_range: tuple[float, float] = Field(
        (0.0, 1.0), description="Adjacent-column equality probability range"
    )
    join_corr_range: tuple[float, float] = Field(
        (0.2, 1.0), description="[j_min, j_max] for the PK share an FK covers"
    )
    n_main_tables: int = Field(1, ge=1, description="Tables that receive a PK")
    seed: int = Field(0, ge=0, lt=2**64, description="Base seed")

    @field_validator("rows_range", "cols_range")
    @classmethod
    def counts_must_be_ordered(cls, v: tuple[int, int]) -> tuple[int, int]:
        if v[0] < 1 or v[0] > v[1]:
            raise ValueError(f"Range {v} must satisfy 1 <= lo <= hi")
        return v

    @field_validator("skew_range", "corr_range")
    @classmethod
    def probabilities_must_be_ordered(
        cls, v: tuple[float, float]
    ) -> tuple[float, float]:
        if not 0.0 <= v[0] <= v[1] <= 1.0:
            raise ValueError(f"Range {v} must satisfy 0 <= lo <= hi <= 1")
        return v

    @field_validator("join_corr_range")
    @classmethod
    def join_corr_must_be_positive(
        cls, v: tuple[float, float]
    ) -> tuple[float, float]:
        if not 0.0 < v[0] <= v[1] <= 1.0:
            raise ValueError(f"Join correlation range {v} must lie in (0, 1]")
        return v

    @model_validator(mode="after")
    def main_tables_fit(self) -> "GenParams":
        if self.n_main_tables > self.n_tables:
            raise ValueError(
                f"n_main_tables ({self.n_main_tables}) exceeds n_tables "
                f"({self.n_tables})"
            )
        return self


# Regimes mixed by the separation corpus; each favours a different estimator.
REGIME_PRESETS: dict[str, GenParams] = {
    "uniform_independent": GenParams(
        n_tables=1, skew_range=(0.0, 0.0), corr_range=(0.0, 0.0)
    ),
    "correlated_skewed": GenParams(
        n_tables=1, skew_range=(0.6, 0.95), corr_range=(0.7, 1.0)
    ),
    "multi_table": GenParams(
        n_tables=4,
        n_main_tables=2,
        skew_range=(0.0, 0.5),
        corr_range=(0.0, 0.5),
        join_corr_range=(0.2, 1.0),
    ),
}
