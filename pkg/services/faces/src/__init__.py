"""Face service: faces of ASM_n as elementary flow grids."""

from .face import (
    ClosureGap,
    Ear,
    EarDirection,
    Face,
    FaceStatistics,
    are_estranged,
    closure_gap,
    dimension,
    ear_closure,
    ear_defines_facet,
    ears,
    face_from_grid,
    face_statistics,
    facets,
    fix_ear,
    gap_between,
    newly_fixed_edges,
    smallest_face,
    top_face,
    vertices,
)
from .lattice import (
    EMPTY_FACE_KEY,
    FaceLattice,
    TwoLevelReport,
    TwoLevelWitness,
    face_lattice,
    is_two_level,
)
from .propagation import ClosureContradiction, iter_completions, propagate

__all__ = [
    "ClosureGap",
    "Ear",
    "EarDirection",
    "Face",
    "FaceStatistics",
    "are_estranged",
    "closure_gap",
    "dimension",
    "ear_closure",
    "ear_defines_facet",
    "ears",
    "face_from_grid",
    "face_statistics",
    "facets",
    "fix_ear",
    "gap_between",
    "newly_fixed_edges",
    "smallest_face",
    "top_face",
    "vertices",
    "EMPTY_FACE_KEY",
    "FaceLattice",
    "TwoLevelReport",
    "TwoLevelWitness",
    "face_lattice",
    "is_two_level",
    "ClosureContradiction",
    "iter_completions",
    "propagate",
]
