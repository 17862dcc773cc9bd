"""CLI service: report models, theorem audit and the asmgrid entry point."""

from .audit import run_audit
from .main import build_parser, face_report, main
from .models import (
    TOOL_VERSION,
    AuditReport,
    CheckResult,
    ClassificationReport,
    Command,
    FaceReport,
    LatticeReport,
    OutputFormat,
    ProductSummary,
    RunConfig,
    TypeRow,
)

__all__ = [
    "run_audit",
    "build_parser",
    "face_report",
    "main",
    "TOOL_VERSION",
    "AuditReport",
    "CheckResult",
    "ClassificationReport",
    "Command",
    "FaceReport",
    "LatticeReport",
    "OutputFormat",
    "ProductSummary",
    "RunConfig",
    "TypeRow",
]
