"""Combinatorial types of faces, bottom-up face scans and exclusion audits."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from packages.asm.core import DihedralSymmetry, apply_symmetry, enumerate_asms
from packages.asm.errors import ResourceGuardError, UnsupportedDimensionError
from packages.asm.settings import get_settings
from packages.flowgrid.grid import asm_to_simple_flow_grid, union
from services.faces.src.face import Face, smallest_face

from .canonical import CanonicalForm, canonical_form
from .catalog import (
    EXCLUDED_TYPES,
    CatalogEntry,
    entry_for,
    excluded_matches,
    format_facet_counts,
)

logger = logging.getLogger(__name__)

MAX_FINGERPRINT_DIM = 4


@dataclass(frozen=True)
class CombinatorialType:
    """Combinatorial type of a face: counts, canonical incidence form and facet types.

    Two types are equal iff their dimensions and canonical forms are.
    """

    dimension: int
    num_vertices: int
    num_facets: int
    canonical: CanonicalForm
    facet_types: Tuple["CombinatorialType", ...] = field(default=(), compare=False)
    entry: Optional[CatalogEntry] = field(default=None, compare=False)

    @property
    def name(self) -> Optional[str]:
        return self.entry.name if self.entry else None

    @property
    def code(self) -> str:
        """Short code used in facet multisets; unnamed types use their digest."""
        if self.entry and self.entry.code:
            return self.entry.code
        return f"#{self.canonical.digest()}"

    @property
    def label(self) -> str:
        return self.name or f"unnamed-{self.canonical.digest()}"

    @property
    def facet_counts(self) -> Dict[str, int]:
        return dict(Counter(t.code for t in self.facet_types))

    @property
    def facets_label(self) -> str:
        return format_facet_counts(self.facet_counts)

    def sort_key(self) -> Tuple[int, int, int, str]:
        return (self.dimension, self.num_vertices, self.num_facets, self.label)


@lru_cache(maxsize=65536)
def _fingerprint(face: Face) -> CombinatorialType:
    index = {a: k for k, a in enumerate(face.vertices)}
    facet_sets = [frozenset(index[a] for a in facet.vertices) for facet in face.facets]
    facet_types = tuple(
        sorted((_fingerprint(facet) for facet in face.facets), key=CombinatorialType.sort_key)
    )
    counts = Counter(t.code for t in facet_types)
    entry = entry_for(face.dimension, len(face.vertices), len(facet_sets), counts)
    return CombinatorialType(
        dimension=face.dimension,
        num_vertices=len(face.vertices),
        num_facets=len(facet_sets),
        canonical=canonical_form(len(face.vertices), facet_sets),
        facet_types=facet_types,
        entry=entry,
    )


def fingerprint(face: Face) -> CombinatorialType:
    """Combinatorial type of a face of dimension at most 4.

    Raises:
        UnsupportedDimensionError: If the face has dimension above 4
    """
    if face.dimension > MAX_FINGERPRINT_DIM:
        raise UnsupportedDimensionError(face.dimension, MAX_FINGERPRINT_DIM)
    return _fingerprint(face)


def symmetric_image(face: Face, symmetry: DihedralSymmetry) -> Face:
    """Face spanned by the images of the face's vertices under a grid symmetry."""
    return smallest_face([apply_symmetry(a, symmetry) for a in face.vertices])


def is_symmetry_invariant(face: Face) -> bool:
    """True iff every dihedral image of the face has the same fingerprint."""
    base = fingerprint(face)
    return all(fingerprint(symmetric_image(face, s)) == base for s in DihedralSymmetry)


@dataclass
class FaceScan:
    """Faces of ASM_n up to a dimension, grouped by dimension."""

    n: int
    max_dim: int
    faces: Dict[int, List[Face]] = field(default_factory=dict)
    complete: bool = True
    coverage: str = ""

    @property
    def num_faces(self) -> int:
        return sum(len(group) for group in self.faces.values())

    def iter_faces(self, min_dim: int = 0) -> Iterator[Face]:
        for d in sorted(self.faces):
            if d >= min_dim:
                yield from self.faces[d]


def _check_scan_limits(n: int, max_dim: int) -> None:
    settings = get_settings()
    if n > settings.classify_max_n:
        raise ResourceGuardError("scan n", n, settings.classify_max_n)
    if max_dim > settings.classify_max_dim:
        raise ResourceGuardError("scan max_dim", max_dim, settings.classify_max_dim)


def scan_faces(n: int, max_dim: int, budget: Optional[int] = None) -> FaceScan:
    """All faces of ASM_n of dimension at most max_dim.

    A (k+1)-face is the join of any of its facets with a vertex outside that
    facet, so joining every k-face with every vertex reaches all of them.

    Args:
        n: Grid order
        max_dim: Largest face dimension to collect
        budget: Maximum number of faces to record; defaults to ASMGRID_SCAN_BUDGET

    Returns:
        FaceScan; `complete` is False when the budget ran out

    Raises:
        ResourceGuardError: If n or max_dim exceeds the configured limits
    """
    _check_scan_limits(n, max_dim)
    budget = budget if budget is not None else get_settings().scan_budget
    asms = enumerate_asms(n)
    grids = [asm_to_simple_flow_grid(a) for a in asms]
    scan = FaceScan(n=n, max_dim=max_dim)
    scan.faces[0] = [smallest_face([a]) for a in asms]
    recorded = len(scan.faces[0])
    exhausted = False
    for k in range(max_dim):
        found: Dict[bytes, Face] = {}
        for face in scan.faces[k]:
            for grid in grids:
                if face.grid.admits(grid):
                    continue
                joined = union([face.grid, grid])
                if joined.key in found:
                    continue
                candidate = Face(joined)
                if candidate.dimension != k + 1:
                    continue
                if recorded >= budget:
                    exhausted = True
                    break
                found[joined.key] = candidate
                recorded += 1
            if exhausted:
                break
        scan.faces[k + 1] = sorted(found.values(), key=lambda f: f.key)
        logger.debug("n=%d: %d faces of dimension %d", n, len(found), k + 1)
        if exhausted:
            scan.complete = False
            scan.coverage = (
                f"budget of {budget} faces exhausted while collecting dimension {k + 1}; "
                f"dimensions 0..{k} are complete"
            )
            logger.warning("face scan for n=%d incomplete: %s", n, scan.coverage)
            break
        if not found:
            break
    if scan.complete:
        scan.coverage = f"all faces of dimension 0..{max_dim}"
    logger.info("n=%d: scanned %d faces", n, scan.num_faces)
    return scan


def iter_faces(n: int, max_dim: int, budget: Optional[int] = None) -> Iterator[Face]:
    """Faces of ASM_n by increasing dimension, up to max_dim."""
    yield from scan_faces(n, max_dim, budget).iter_faces()


@dataclass
class TypeCount:
    """A combinatorial type, how often it occurs and one face realizing it."""

    type: CombinatorialType
    count: int
    witness: Face


@dataclass
class Classification:
    n: int
    max_dim: int
    rows: List[TypeCount]
    complete: bool
    coverage: str

    def types(self) -> List[CombinatorialType]:
        return [row.type for row in self.rows]

    def names(self) -> List[Optional[str]]:
        return [row.type.name for row in self.rows]


def classify_all_faces(
    n: int, max_dim: int, budget: Optional[int] = None, scan: Optional[FaceScan] = None
) -> Classification:
    """Distinct combinatorial types of faces of dimension 2..max_dim with counts.

    Args:
        n: Grid order, at most ASMGRID_CLASSIFY_MAX_N
        max_dim: At most 4
        budget: Face budget for the scan
        scan: A previous scan to reuse instead of scanning again

    Returns:
        Classification with rows ordered by (d, V, F, name)
    """
    if scan is None:
        scan = scan_faces(n, max_dim, budget)
    counts: Dict[CombinatorialType, TypeCount] = {}
    for face in scan.iter_faces(min_dim=2):
        if face.dimension > max_dim:
            continue
        t = fingerprint(face)
        row = counts.get(t)
        if row is None:
            counts[t] = TypeCount(type=t, count=1, witness=face)
        else:
            row.count += 1
    rows = sorted(counts.values(), key=lambda row: row.type.sort_key())
    logger.info("n=%d: %d combinatorial types up to dimension %d", n, len(rows), max_dim)
    return Classification(n, max_dim, rows, scan.complete, scan.coverage)


def is_neighborly(face: Face) -> bool:
    """True iff every pair of vertices spans an edge of the face."""
    return all(smallest_face([a, b]).dimension == 1 for a, b in combinations(face.vertices, 2))


@dataclass
class ExclusionReport:
    """Faces matching excluded types among the scanned 4-dimensional faces."""

    n: int
    examined: int
    matches: Dict[str, List[Face]]
    complete: bool
    coverage: str

    @property
    def passed(self) -> bool:
        return not any(self.matches.values())


def _four_faces(n: int, budget: Optional[int], scan: Optional[FaceScan]) -> FaceScan:
    if scan is None:
        scan = scan_faces(n, MAX_FINGERPRINT_DIM, budget)
    return scan


def b3_absence_audit(
    n: int, budget: Optional[int] = None, scan: Optional[FaceScan] = None
) -> ExclusionReport:
    """Look for 4-dimensional faces with 6 vertices, 9 facets and a complete vertex graph."""
    scan = _four_faces(n, budget, scan)
    candidates = scan.faces.get(4, [])
    matches = [
        face
        for face in candidates
        if len(face.vertices) == 6 and len(face.facets) == 9 and is_neighborly(face)
    ]
    if matches:
        logger.warning("n=%d: %d faces with the B3 signature", n, len(matches))
    return ExclusionReport(n, len(candidates), {"B3": matches}, scan.complete, scan.coverage)


def excluded_two_level_audit(
    n: int, budget: Optional[int] = None, scan: Optional[FaceScan] = None
) -> ExclusionReport:
    """Check that no 4-dimensional face has the signature of an excluded 2-level type."""
    scan = _four_faces(n, budget, scan)
    candidates = scan.faces.get(4, [])
    matches: Dict[str, List[Face]] = {entry.name: [] for entry in EXCLUDED_TYPES}
    for face in candidates:
        t = fingerprint(face)
        for entry in excluded_matches(t.dimension, t.num_vertices, t.num_facets, t.facet_counts):
            if entry.neighborly and not is_neighborly(face):
                continue
            matches[entry.name].append(face)
    return ExclusionReport(n, len(candidates), matches, scan.complete, scan.coverage)
