"""
On-disk schema manifest for a dataset directory.
The manifest is versioned so older corpora fail loudly instead of silently.
"""

from pydantic import BaseModel, ConfigDict, Field

FORMAT_VERSION = 1


class ManifestTable(BaseModel):
    """One table entry: CSV file name, column order, PK and dictionaries."""

    model_config = ConfigDict(extra="forbid")

    name: str
    file: str
    columns: list[str]
    rows: int = Field(..., ge=0)
    pk: str | None = None
    dictionaries: dict[str, list[str]] = Field(default_factory=dict)


class ManifestJoin(BaseModel):
    """One PK-FK join edge."""

    model_config = ConfigDict(extra="forbid")

    pk_table: str
    pk_column: str
    fk_table: str
    fk_column: str


class DatasetManifest(BaseModel):
    """Schema manifest written next to the table CSVs."""

    model_config = ConfigDict(extra="forbid")

    format_version: int = Field(FORMAT_VERSION, description="Manifest layout version")
    dataset_id: str
    tables: list[ManifestTable] = Field(default_factory=list)
    joins: list[ManifestJoin] = Field(default_factory=list)
