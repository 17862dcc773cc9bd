"""Face lattices of faces of ASM_n and the 2-level check."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, List, Optional, Tuple

from packages.asm.core import Asm
from packages.asm.errors import DomainError, ResourceGuardError
from packages.asm.settings import get_settings
from packages.flowgrid.grid import FORWARD, GridEdge, edge_index

from .face import Face, edge_value, newly_fixed_edges, smallest_face

logger = logging.getLogger(__name__)

EMPTY_FACE_KEY = b""


@dataclass
class FaceLattice:
    """All faces of a face, with cover relations.

    `covers[k]` lists the keys of the facets of face k; vertices are covered
    by the empty face, stored under EMPTY_FACE_KEY with dimension -1.
    """

    top: Face
    faces: Dict[bytes, Face] = field(default_factory=dict)
    covers: Dict[bytes, List[bytes]] = field(default_factory=dict)

    def dimension_of(self, key: bytes) -> int:
        return -1 if key == EMPTY_FACE_KEY else self.faces[key].dimension

    def by_dimension(self) -> Dict[int, List[Face]]:
        grouped: Dict[int, List[Face]] = {}
        for face in self.faces.values():
            grouped.setdefault(face.dimension, []).append(face)
        return grouped

    def f_vector(self) -> Tuple[int, ...]:
        """Number of faces of each dimension 0..d, the empty face excluded."""
        grouped = self.by_dimension()
        return tuple(len(grouped.get(k, [])) for k in range(self.top.dimension + 1))

    def __len__(self) -> int:
        return len(self.faces) + 1

    def vertex_sets(self) -> Dict[bytes, frozenset]:
        return {key: frozenset(face.vertices) for key, face in self.faces.items()}


def face_lattice(face: Face, max_dim: Optional[int] = None) -> FaceLattice:
    """Build the lattice of all subfaces by repeatedly taking facets.

    Args:
        face: A face of dimension at most the limit
        max_dim: Dimension limit; defaults to ASMGRID_LATTICE_MAX_DIM

    Returns:
        FaceLattice with memoized faces keyed by grid encoding

    Raises:
        ResourceGuardError: If the face dimension exceeds the limit
    """
    limit = max_dim if max_dim is not None else get_settings().lattice_max_dim
    if face.dimension > limit:
        raise ResourceGuardError("lattice dimension", face.dimension, limit)

    lattice = FaceLattice(top=face)
    lattice.faces[face.key] = face
    queue: Deque[Face] = deque([face])
    while queue:
        current = queue.popleft()
        if current.dimension == 0:
            lattice.covers[current.key] = [EMPTY_FACE_KEY]
            continue
        keys = []
        for facet in current.facets:
            known = lattice.faces.get(facet.key)
            if known is None:
                lattice.faces[facet.key] = facet
                queue.append(facet)
            keys.append(facet.key)
        lattice.covers[current.key] = keys
    lattice.covers[EMPTY_FACE_KEY] = []
    logger.debug("face lattice of dimension %d has f-vector %s", face.dimension, lattice.f_vector())
    return lattice


@dataclass(frozen=True)
class TwoLevelWitness:
    """A facet, the prefix edge cutting it out, and the face of the remaining vertices.

    The facet lies on the hyperplane where the edge's prefix sum equals
    `value`; every other vertex lies on the parallel hyperplane where it
    equals 1 - value, and those vertices form `complement`.
    """

    facet: Face
    edge: GridEdge
    value: int
    complement: Face


@dataclass
class TwoLevelReport:
    """Outcome of the 2-level check for one face."""

    is_two_level: bool
    witnesses: List[TwoLevelWitness] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)


def _witness_for(face: Face, facet: Face) -> Tuple[Optional[TwoLevelWitness], Optional[str]]:
    freed = newly_fixed_edges(face, facet)
    if not freed:
        return None, f"facet {facet.key.hex()} fixes no doubly edge of the face"
    edge = freed[0]
    value = 1 if facet.grid.codes[edge_index(face.n, edge)] == FORWARD else 0
    facet_vertices = set(facet.vertices)
    rest: List[Asm] = [a for a in face.vertices if a not in facet_vertices]
    if not rest:
        return None, f"facet {facet.key.hex()} contains every vertex"
    off_plane = [a for a in rest if edge_value(a, edge) != 1 - value]
    if off_plane:
        return None, f"vertex off both hyperplanes of facet {facet.key.hex()}:\n{off_plane[0]}"
    complement = smallest_face(rest)
    if sorted(complement.vertices) != sorted(rest):
        return None, f"vertices outside facet {facet.key.hex()} do not span a face"
    return TwoLevelWitness(facet=facet, edge=edge, value=value, complement=complement), None


def is_two_level(face: Face) -> TwoLevelReport:
    """Check that every facet has a parallel hyperplane holding the other vertices.

    Args:
        face: A face of dimension at least 1

    Returns:
        TwoLevelReport with one witness per facet

    Raises:
        DomainError: If the face is a vertex
    """
    if face.dimension < 1:
        raise DomainError("2-level check needs a face of dimension at least 1")
    report = TwoLevelReport(is_two_level=True)
    for facet in face.facets:
        witness, failure = _witness_for(face, facet)
        if witness is None:
            report.is_two_level = False
            report.failures.append(failure)
        else:
            report.witnesses.append(witness)
    return report
