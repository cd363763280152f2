"""
SPJ query and workload models.
Queries are pydantic models so a workload file is one JSON document per line.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from apps.corpus.domain.models import JoinEdge


class JoinPredicate(BaseModel):
    """Equality ``pk_table.pk_column = fk_table.fk_column``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    pk_table: str
    pk_column: str
    fk_table: str
    fk_column: str

    @classmethod
    def from_edge(cls, edge: JoinEdge) -> "JoinPredicate":
        return cls(**vars(edge))

    def __str__(self) -> str:
        return (
            f"{self.pk_table}.{self.pk_column} = {self.fk_table}.{self.fk_column}"
        )


class RangePredicate(BaseModel):
    """Inclusive filter ``lo <= table.column <= hi``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    table: str
    column: str
    lo: int
    hi: int

    @model_validator(mode="after")
    def bounds_must_be_ordered(self) -> "RangePredicate":
        if self.lo > self.hi:
            raise ValueError(
                f"Range on {self.table}.{self.column} has lo {self.lo} > hi {self.hi}"
            )
        return self


class Query(BaseModel):
    """
    A conjunctive SPJ query.

    The join predicates form a spanning tree over ``tables``, so the query is a
    single join component with no cycles.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tables: list[str] = Field(..., min_length=1, description="Tables joined")
    join_predicates: list[JoinPredicate] = Field(default_factory=list)
    range_predicates: list[RangePredicate] = Field(default_factory=list)
    true_card: int | None = Field(
        None, ge=0, description="Exact result size, set by the oracle pass"
    )

    @field_validator("tables")
    @classmethod
    def tables_must_be_distinct(cls, v: list[str]) -> list[str]:
        if len(set(v)) != len(v):
            raise ValueError(f"Query lists a table twice: {v}")
        return v

    @model_validator(mode="after")
    def must_be_join_tree(self) -> "Query":
        members = set(self.tables)
        for j in self.join_predicates:
            if j.pk_table not in members or j.fk_table not in members:
                raise ValueError(f"Join '{j}' references a table outside the query")
        for r in self.range_predicates:
            if r.table not in members:
                raise ValueError(f"Filter on '{r.table}' outside the query")

        if len(self.join_predicates) != len(self.tables) - 1:
            raise ValueError(
                f"{len(self.tables)} tables need exactly {len(self.tables) - 1} "
                f"join predicates, got {len(self.join_predicates)}"
            )
        reached = {self.tables[0]}
        grew = True
        while grew:
            grew = False
            for j in self.join_predicates:
                if (j.pk_table in reached) != (j.fk_table in reached):
                    reached.update((j.pk_table, j.fk_table))
                    grew = True
        if reached != members:
            raise ValueError(f"Tables {sorted(members - reached)} are not joined in")
        return self

    def key(self) -> str:
        """Identity of the query ignoring its cardinality."""
        return self.model_dump_json(exclude={"true_card"})


class Workload(BaseModel):
    """Train and test queries of one dataset."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset_id: str
    train: list[Query] = Field(default_factory=list)
    test: list[Query] = Field(default_factory=list)

    @model_validator(mode="after")
    def splits_must_be_disjoint(self) -> "Workload":
        test_keys = {q.key() for q in self.test}
        shared = sum(q.key() in test_keys for q in self.train)
        if shared:
            raise ValueError(f"{shared} train queries also appear in the test split")
        return self

    @property
    def is_labeled(self) -> bool:
        return all(q.true_card is not None for q in (*self.train, *self.test))


class WorkloadLine(BaseModel):
    """One line of a workload file."""

    model_config = ConfigDict(extra="forbid")

    dataset_id: str
    split: Literal["train", "test"]
    query: Query


class WorkloadParams(BaseModel):
    """Per-dataset workload shape."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_train: int = Field(300, ge=0, description="Training queries per dataset")
    n_test: int = Field(100, ge=1, description="Test queries per dataset")
    pred_prob: float = Field(
        0.5, ge=0.0, le=1.0, description="Chance each non-key column gets a filter"
    )
