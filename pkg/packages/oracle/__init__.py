"""Independent face oracle from the prefix-sum inequality description."""

from .tightness import (
    ConstraintState,
    Discrepancy,
    PrefixConstraint,
    TightnessProfile,
    affine_dimension_oracle,
    prefix_constraints,
    profile_from_vertices,
    profile_of_face,
    smallest_face_by_filter,
    vertices_by_filter,
)

__all__ = [
    "ConstraintState",
    "Discrepancy",
    "PrefixConstraint",
    "TightnessProfile",
    "affine_dimension_oracle",
    "prefix_constraints",
    "profile_from_vertices",
    "profile_of_face",
    "smallest_face_by_filter",
    "vertices_by_filter",
]
