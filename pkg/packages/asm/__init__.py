"""Alternating sign matrices, exact linear algebra and shared settings."""

from .core import (
    Asm,
    DihedralSymmetry,
    PartialSums,
    apply_symmetry,
    asm_violation,
    common_order,
    count_asms,
    enumerate_asms,
    iter_asms,
    partial_sums,
    permutation_matrices,
    validate_asm,
)
from .errors import (
    AsmGridError,
    CrossCheckError,
    DomainError,
    InvalidFlowGridError,
    InvariantViolationError,
    ResourceGuardError,
    StructuralInputError,
    UnsupportedDimensionError,
)
from .linalg import IntegerLattice, exact_rank, in_integer_span
from .settings import AsmGridSettings, get_settings

__all__ = [
    "Asm",
    "DihedralSymmetry",
    "PartialSums",
    "apply_symmetry",
    "asm_violation",
    "common_order",
    "count_asms",
    "enumerate_asms",
    "iter_asms",
    "partial_sums",
    "permutation_matrices",
    "validate_asm",
    "AsmGridError",
    "CrossCheckError",
    "DomainError",
    "InvalidFlowGridError",
    "InvariantViolationError",
    "ResourceGuardError",
    "StructuralInputError",
    "UnsupportedDimensionError",
    "IntegerLattice",
    "exact_rank",
    "in_integer_span",
    "AsmGridSettings",
    "get_settings",
]
