"""Pydantic models for asmgrid reports."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

TOOL_VERSION = "0.1.0"


class Command(str, Enum):
    """CLI subcommands."""

    COUNT = "count"
    ENUMERATE = "enumerate"
    FACE = "face"
    LATTICE = "lattice"
    CLASSIFY = "classify"
    AUDIT = "audit"
    EXPORT_DOT = "export-dot"


class OutputFormat(str, Enum):
    """Report formats."""

    JSON = "json"
    CSV = "csv"
    DOT = "dot"
    TEXT_GRID = "text-grid"


class RunConfig(BaseModel):
    """Effective settings of one run, echoed in every report."""

    command: Command
    n: Optional[int] = Field(None, ge=1)
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    dot_path: Optional[str] = None
    max_dim: Optional[int] = Field(None, ge=0)
    budget: int = Field(..., gt=0)
    num_seeds: int = Field(0, ge=0, description="Number of ASMs read from the input")
    format: OutputFormat = OutputFormat.JSON
    cycle_samples: int = Field(1000, gt=0)
    sample_seed: int = 0

    @model_validator(mode="after")
    def check_max_dim(self) -> "RunConfig":
        if self.max_dim is None:
            return self
        limit = {Command.CLASSIFY: 4, Command.AUDIT: 4, Command.LATTICE: 5}.get(
            Command(self.command)
        )
        if limit is not None and self.max_dim > limit:
            raise ValueError(f"max_dim {self.max_dim} exceeds {limit} for {self.command}")
        return self

    class Config:
        """Pydantic config."""

        use_enum_values = True


class ProductSummary(BaseModel):
    """Block factors of a face whose doubly graph is not 2-connected."""

    num_blocks: int
    factor_dimensions: List[int]
    factor_vertex_counts: List[int]


class FaceReport(BaseModel):
    """Face statistics, vertices and canonical grid."""

    version: str = TOOL_VERSION
    config: Optional[RunConfig] = None
    n: int
    dimension: int
    num_vertices: int
    num_facets: int
    num_ears: int
    degree_profile: List[int]
    vertices: List[Dict[str, Any]]
    grid: Dict[str, Any]
    centrally_symmetric: bool
    product: Optional[ProductSummary] = None


class LatticeReport(BaseModel):
    """f-vector and cover relations of a face lattice; faces keyed by grid hex."""

    version: str = TOOL_VERSION
    config: Optional[RunConfig] = None
    dimension: int
    f_vector: List[int]
    dimensions: Dict[str, int]
    covers: Dict[str, List[str]]


class TypeRow(BaseModel):
    """One combinatorial type with its occurrence count."""

    name: str
    dimension: int
    num_vertices: int
    num_facets: int
    facets: str
    count: int
    line: Optional[int] = None
    witness: Dict[str, Any]


class ClassificationReport(BaseModel):
    version: str = TOOL_VERSION
    config: Optional[RunConfig] = None
    rows: List[TypeRow]
    complete: bool
    coverage: str


class CheckResult(BaseModel):
    """Outcome of one theorem check over the scanned faces."""

    name: str
    passed: bool
    checked: int = Field(..., ge=0)
    detail: str = ""
    witness: Optional[Dict[str, Any]] = None


class AuditReport(BaseModel):
    version: str = TOOL_VERSION
    config: Optional[RunConfig] = None
    n: int
    checks: List[CheckResult]
    discrepancies: List[Dict[str, Any]] = Field(default_factory=list)
    complete: bool = True
    coverage: str = ""

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks) and not self.discrepancies
