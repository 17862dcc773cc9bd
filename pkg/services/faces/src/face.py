"""Faces of ASM_n as elementary flow grids: dimension, vertices, ears and facets."""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from packages.asm.core import Asm, common_order
from packages.asm.errors import (
    CrossCheckError,
    DomainError,
    InvalidFlowGridError,
    InvariantViolationError,
)
from packages.flowgrid.doubly import (
    DegreeProfile,
    DoublyDirectedGraph,
    degree_profile,
    doubly_directed_graph,
    doubly_directed_regions,
)
from packages.flowgrid.grid import (
    BACKWARD,
    DOUBLY,
    FORWARD,
    ElementaryFlowGrid,
    GridEdge,
    SimpleFlowGrid,
    Vertex,
    asm_to_simple_flow_grid,
    edge_count,
    edge_index,
    simple_flow_grid_to_asm,
    union,
)

from .propagation import ClosureContradiction, iter_completions, propagate

logger = logging.getLogger(__name__)


class EarDirection(str, Enum):
    """Which way an ear is fixed: its smallest edge forward or backward."""

    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def value_of_smallest_edge(self) -> int:
        return 1 if self == EarDirection.FORWARD else 0

    def opposite(self) -> "EarDirection":
        return EarDirection.BACKWARD if self == EarDirection.FORWARD else EarDirection.FORWARD


@dataclass(frozen=True)
class Ear:
    """Maximal path of doubly edges between branch vertices, or a cycle.

    Interior vertices have degree 2. Endpoints are the branch vertices
    (degree 3 or 4) at its ends; a cycle has at most one.
    """

    edges: Tuple[GridEdge, ...]
    endpoints: Tuple[Vertex, ...]
    is_cycle: bool

    @property
    def smallest_edge(self) -> GridEdge:
        return min(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


class Face:
    """A face of ASM_n, identified by its canonical elementary flow grid.

    Statistics are computed on first access and cached.
    """

    def __init__(self, grid: ElementaryFlowGrid):
        """Initialize a face.

        Args:
            grid: Canonical grid (the union of the face's vertex grids); use
                face_from_grid to validate an arbitrary grid
        """
        self.grid = grid

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def key(self) -> bytes:
        return self.grid.key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Face) and other.grid == self.grid

    def __hash__(self) -> int:
        return hash(self.grid)

    def __repr__(self) -> str:
        return f"Face(n={self.n}, dimension={self.dimension}, key={self.key.hex()})"

    @cached_property
    def doubly_graph(self) -> DoublyDirectedGraph:
        return doubly_directed_graph(self.grid)

    @cached_property
    def dimension(self) -> int:
        return doubly_directed_regions(self.doubly_graph)

    @cached_property
    def degree_profile(self) -> DegreeProfile:
        return degree_profile(self.doubly_graph)

    @cached_property
    def vertices(self) -> List[Asm]:
        return _enumerate_vertices(self.grid)

    @cached_property
    def ears(self) -> List[Ear]:
        return _find_ears(self.doubly_graph)

    @cached_property
    def facets(self) -> List["Face"]:
        return _find_facets(self)

    def contains_vertex(self, a: Asm) -> bool:
        return a.n == self.n and self.grid.admits(asm_to_simple_flow_grid(a))

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "num_vertices": len(self.vertices),
            "num_facets": len(self.facets),
            "num_ears": len(self.ears),
            "degree_profile": list(self.degree_profile),
            "vertices": [a.to_json() for a in self.vertices],
            "grid": self.grid.to_json(),
        }


def _enumerate_vertices(grid: ElementaryFlowGrid) -> List[Asm]:
    n = grid.n
    found = []
    for values in iter_completions(n, grid.values()):
        simple = SimpleFlowGrid(n, bytes(FORWARD if v else BACKWARD for v in values))
        found.append(simple_flow_grid_to_asm(simple))
    if not found:
        raise InvalidFlowGridError("grid admits no simple flow grid")
    return sorted(found)


def _find_ears(g: DoublyDirectedGraph) -> List[Ear]:
    degree_profile(g)
    branch = {v for v in g.vertices if g.degree(v) >= 3}
    visited = set()
    found: List[Ear] = []

    def walk(start: Vertex, first: Tuple[Vertex, GridEdge], stop) -> Tuple[List[GridEdge], Vertex]:
        path = [first[1]]
        visited.add(first[1])
        current = first[0]
        while not stop(current) and current != start:
            (a, ea), (b, eb) = g.neighbors(current)
            nxt, edge = (b, eb) if ea == path[-1] else (a, ea)
            path.append(edge)
            visited.add(edge)
            current = nxt
        return path, current

    for v in sorted(branch):
        for step in g.neighbors(v):
            if step[1] in visited:
                continue
            path, end = walk(v, step, lambda w: w in branch)
            found.append(Ear(tuple(path), tuple(sorted({v, end})), is_cycle=(end == v)))

    for edge in sorted(g.edges):
        if edge in visited:
            continue
        start, other = edge.endpoints
        path, _ = walk(start, (other, edge), lambda w: False)
        found.append(Ear(tuple(path), (), is_cycle=True))

    return sorted(found, key=lambda ear: ear.smallest_edge)


def smallest_face(asms: Sequence[Asm]) -> Face:
    """Smallest face of ASM_n containing the given ASMs.

    Args:
        asms: Nonempty list of ASMs of one order

    Returns:
        Face whose grid is the union of their simple flow grids

    Raises:
        StructuralInputError: If the list is empty or mixes orders
    """
    common_order(asms)
    return Face(union([asm_to_simple_flow_grid(a) for a in asms]))


def face_from_grid(grid: ElementaryFlowGrid) -> Face:
    """Face of a grid, checking that the grid is the union of its vertex grids.

    Raises:
        InvalidFlowGridError: If the grid admits no ASM or is not canonical
    """
    vertices = _enumerate_vertices(grid)
    canonical = union([asm_to_simple_flow_grid(a) for a in vertices])
    if canonical != grid:
        raise InvalidFlowGridError(
            "grid is not elementary: the union of its simple flow grids fixes more edges"
        )
    face = Face(grid)
    face.__dict__["vertices"] = vertices
    return face


def top_face(n: int) -> Face:
    """ASM_n itself: every internal edge doubly directed."""
    return Face(ElementaryFlowGrid(n, bytes([DOUBLY]) * edge_count(n)))


def dimension(face: Face) -> int:
    """Number of doubly directed regions of the face's grid."""
    return face.dimension


def vertices(face: Face) -> List[Asm]:
    """ASMs whose simple flow grids agree with every fixed edge, lexicographic."""
    return face.vertices


def ears(face: Face) -> List[Ear]:
    """Partition of the doubly edges into ears, ordered by smallest edge."""
    return face.ears


def facets(face: Face) -> List[Face]:
    """Faces of dimension one less, found by fixing each ear both ways."""
    return face.facets


@dataclass(frozen=True)
class ClosureGap:
    """Edges that local propagation leaves doubly but no remaining vertex orients both ways.

    Arises when fixing an ear: the closure is computed vertex by vertex, while
    the subface is the union of the vertices the closure admits.
    """

    face: str
    ear: GridEdge
    direction: "EarDirection"
    edges: Tuple[GridEdge, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "face": self.face,
            "ear": str(self.ear),
            "direction": EarDirection(self.direction).value,
            "edges": [str(e) for e in self.edges],
        }


def ear_closure(
    face: Face, ear: Ear, direction: EarDirection
) -> Tuple[Face, ElementaryFlowGrid]:
    """Subface for one ear direction together with the propagation closure that selected it."""
    if ear not in face.ears:
        raise DomainError("ear is not an ear of this face")
    n = face.n
    index = edge_index(n, ear.smallest_edge)
    values = face.grid.values()
    values[index] = EarDirection(direction).value_of_smallest_edge
    try:
        closed = propagate(n, values, [index])
    except ClosureContradiction as exc:
        message = f"fixing ear at {ear.smallest_edge} is contradictory"
        raise InvariantViolationError(message) from exc
    closure = ElementaryFlowGrid.from_values(n, closed)
    members = [a for a in face.vertices if closure.admits(asm_to_simple_flow_grid(a))]
    if not members:
        raise InvariantViolationError(f"no vertex orients ear at {ear.smallest_edge} {direction}")
    sub = Face(union([asm_to_simple_flow_grid(a) for a in members]))
    sub.__dict__["vertices"] = members
    return sub, closure


def gap_between(
    face: Face, ear: Ear, direction: EarDirection, sub: Face, closure: ElementaryFlowGrid
) -> Optional[ClosureGap]:
    if sub.grid == closure:
        return None
    codes = sub.grid.codes
    edges = tuple(e for e in closure.doubly_edges() if codes[edge_index(face.n, e)] != DOUBLY)
    return ClosureGap(face.key.hex(), ear.smallest_edge, EarDirection(direction), edges)


def closure_gap(face: Face, ear: Ear, direction: EarDirection) -> Optional[ClosureGap]:
    """Edges the subface fixes beyond the propagation closure, or None if they agree."""
    sub, closure = ear_closure(face, ear, direction)
    return gap_between(face, ear, direction, sub, closure)


def fix_ear(face: Face, ear: Ear, direction: EarDirection, strict: bool = False) -> Face:
    """Subface obtained by fixing an ear one way and closing under propagation.

    The result is the smallest face containing every vertex compatible with
    the closure. When that face fixes more edges than the closure, the gap is
    logged; with strict=True it is raised instead.

    Args:
        face: The face
        ear: One of face.ears
        direction: Orientation of the ear's smallest edge
        strict: Raise on any closure gap

    Returns:
        The subface

    Raises:
        DomainError: If the ear does not belong to the face
        InvariantViolationError: If propagation contradicts itself
        CrossCheckError: If strict and the closure and the subface disagree
    """
    sub, closure = ear_closure(face, ear, direction)
    gap = gap_between(face, ear, direction, sub, closure)
    if gap is not None:
        if strict:
            raise CrossCheckError(gap)
        logger.info(
            "fixing ear at %s %s: vertices fix %d edges the closure leaves doubly",
            ear.smallest_edge,
            EarDirection(direction).value,
            len(gap.edges),
        )
    return sub


def _find_facets(face: Face) -> List[Face]:
    target = face.dimension - 1
    if target < 0:
        return []
    found: Dict[bytes, Face] = {}
    for ear in face.ears:
        for direction in EarDirection:
            sub = fix_ear(face, ear, direction)
            if sub.dimension == target and sub.key not in found:
                found[sub.key] = sub
    return list(found.values())


def ear_defines_facet(face: Face, ear: Ear) -> List[EarDirection]:
    """Directions in which fixing the ear yields a facet."""
    target = face.dimension - 1
    return [d for d in EarDirection if fix_ear(face, ear, d).dimension == target]


def newly_fixed_edges(face: Face, sub: Face) -> List[GridEdge]:
    """Doubly edges of face that are fixed in the subface."""
    return [e for e in face.grid.doubly_edges() if sub.grid.codes[edge_index(face.n, e)] != DOUBLY]


def are_estranged(face: Face, a: Asm, b: Asm) -> bool:
    """True iff no proper face of the face contains both vertices.

    Raises:
        DomainError: If a or b is not a vertex of the face
    """
    for x in (a, b):
        if not face.contains_vertex(x):
            raise DomainError(f"matrix is not a vertex of the face:\n{x}")
    return smallest_face([a, b]).grid == face.grid


@dataclass(frozen=True)
class FaceStatistics:
    """Counts used by the bound and Euler-relation checks."""

    dimension: int
    num_vertices: int
    num_facets: int
    num_ears: int
    degree_profile: DegreeProfile
    connected: bool
    two_connected: bool

    @property
    def has_branch_vertex(self) -> bool:
        return self.degree_profile.v3 + self.degree_profile.v4 > 0


def face_statistics(face: Face) -> FaceStatistics:
    graph = face.doubly_graph.to_networkx()
    connected = graph.number_of_nodes() > 0 and nx.is_connected(graph)
    two_connected = connected and graph.number_of_nodes() >= 3 and nx.is_biconnected(graph)
    return FaceStatistics(
        dimension=face.dimension,
        num_vertices=len(face.vertices),
        num_facets=len(face.facets),
        num_ears=len(face.ears),
        degree_profile=face.degree_profile,
        connected=connected,
        two_connected=two_connected,
    )


def edge_value(a: Asm, edge: GridEdge) -> int:
    """Prefix value (1 forward, 0 backward) of an edge in the ASM's simple flow grid."""
    return asm_to_simple_flow_grid(a).value(edge_index(a.n, edge))

