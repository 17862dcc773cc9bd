"""Cycle matrices, basic cycles of a face and the cycle-sum identity."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Sequence, Tuple

import networkx as nx
import numpy as np

from packages.asm.core import Asm
from packages.asm.errors import DomainError, InvalidFlowGridError, InvariantViolationError
from packages.flowgrid.doubly import bounded_regions, order_cycle, region_boundary
from packages.flowgrid.grid import (
    BACKWARD,
    FORWARD,
    EdgeKind,
    GridEdge,
    SimpleFlowGrid,
    Vertex,
    asm_to_simple_flow_grid,
    edge_index,
    simple_flow_grid_to_asm,
)
from services.faces.src.face import Face, smallest_face

from .blocks import two_connected_components

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class CycleMatrix:
    """Matrix with alternating +1/-1 entries at the corners of a grid cycle."""

    n: int
    entries: Matrix
    cycle: Tuple[Vertex, ...]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def flat(self) -> List[int]:
        return [x for row in self.entries for x in row]

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "entries": [list(row) for row in self.entries],
            "cycle": [list(v) for v in self.cycle],
        }

    @property
    def is_clockwise(self) -> bool:
        return clockwise_cycle_matrix(self.n, self.cycle).entries == self.entries


def _edge_between(a: Vertex, b: Vertex) -> GridEdge:
    (i1, j1), (i2, j2) = sorted((a, b))
    if i1 == i2 and j2 == j1 + 1:
        return GridEdge(EdgeKind.HORIZONTAL, i1, j1)
    if j1 == j2 and i2 == i1 + 1:
        return GridEdge(EdgeKind.VERTICAL, i1, j1)
    raise DomainError(f"{a} and {b} are not adjacent grid vertices")


def cycle_edges(cycle: Sequence[Vertex]) -> FrozenSet[GridEdge]:
    """Edges of a closed vertex sequence.

    Raises:
        DomainError: If consecutive vertices are not adjacent or a vertex repeats
    """
    vertices = list(cycle)
    if len(vertices) >= 2 and vertices[0] == vertices[-1]:
        vertices.pop()
    if len(vertices) < 4 or len(set(vertices)) != len(vertices):
        raise DomainError("a simple grid cycle needs at least 4 distinct vertices")
    return frozenset(_edge_between(a, b) for a, b in zip(vertices, vertices[1:] + vertices[:1]))


def _signed_area(cycle: Sequence[Vertex]) -> int:
    # x = column, y = -row, so positive area is counterclockwise on screen.
    total = 0
    for (i1, j1), (i2, j2) in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        total += j1 * (-i2) - j2 * (-i1)
    return total


def clockwise_order(cycle: Sequence[Vertex]) -> List[Vertex]:
    """The cycle's vertices traversed clockwise, starting at the smallest vertex."""
    ordered = list(cycle)
    if _signed_area(ordered) > 0:
        ordered.reverse()
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def corners(cycle: Sequence[Vertex]) -> List[Vertex]:
    """Vertices where the cycle turns, in traversal order."""
    k = len(cycle)
    result = []
    for t in range(k):
        prev, here, nxt = cycle[t - 1], cycle[t], cycle[(t + 1) % k]
        if (here[0] == prev[0]) != (nxt[0] == here[0]):
            result.append(here)
    return result


def clockwise_cycle_matrix(n: int, cycle: Sequence[Vertex]) -> CycleMatrix:
    """Clockwise cycle matrix: horizontal segments run from +1 to -1 going clockwise.

    Args:
        n: Grid order
        cycle: Vertices of a simple grid cycle in walking order

    Returns:
        CycleMatrix whose cycle is stored in clockwise order
    """
    ordered = clockwise_order(cycle)
    entries = [[0] * n for _ in range(n)]
    k = len(ordered)
    for t, here in enumerate(ordered):
        prev, nxt = ordered[t - 1], ordered[(t + 1) % k]
        incoming_horizontal = here[0] == prev[0]
        outgoing_horizontal = nxt[0] == here[0]
        if incoming_horizontal == outgoing_horizontal:
            continue
        entries[here[0] - 1][here[1] - 1] = 1 if outgoing_horizontal else -1
    return CycleMatrix(n, tuple(tuple(row) for row in entries), tuple(ordered))


def is_cycle_matrix(n: int, entries: Sequence[Sequence[int]], cycle: Sequence[Vertex]) -> bool:
    """Check nonzeros sit exactly at the cycle's corners, alternate, and sum to zero per line."""
    arr = np.array(entries, dtype=np.int64)
    if arr.shape != (n, n):
        return False
    turn = corners(list(cycle))
    nonzero = {(i + 1, j + 1) for i, j in zip(*np.nonzero(arr))}
    if nonzero != set(turn):
        return False
    signs = [int(arr[i - 1, j - 1]) for i, j in turn]
    if any(s not in (1, -1) for s in signs):
        return False
    if any(a == b for a, b in zip(signs, signs[1:] + signs[:1])):
        return False
    return not arr.sum(axis=0).any() and not arr.sum(axis=1).any()


def difference_cycle_matrix(a: Asm, b: Asm) -> CycleMatrix:
    """B - A for adjacent vertices A and B of ASM_n.

    Raises:
        DomainError: If A and B do not span a 1-dimensional face
        InvariantViolationError: If B - A is not a cycle matrix on the edge's cycle
    """
    face = smallest_face([a, b])
    if face.dimension != 1:
        raise DomainError(f"ASMs span a face of dimension {face.dimension}, not an edge")
    cycle = tuple(order_cycle(face.doubly_graph.edges))
    entries = tuple(tuple(int(x) for x in row) for row in (b.to_array() - a.to_array()))
    if not is_cycle_matrix(a.n, entries, cycle):
        raise InvariantViolationError("difference of adjacent vertices is not a cycle matrix")
    return CycleMatrix(a.n, entries, cycle)


@dataclass(frozen=True)
class BasicRegion:
    """A bounded region of one block and its clockwise boundary matrix."""

    block: int
    cells: FrozenSet[Tuple[int, int]]
    matrix: CycleMatrix


def basic_regions(face: Face) -> List[BasicRegion]:
    """Regions of every block, ordered by block then by smallest cell."""
    decomposition = two_connected_components(face.doubly_graph)
    regions = []
    for k, block in enumerate(decomposition.components):
        for cells in bounded_regions(face.n, block):
            cycle = order_cycle(region_boundary(cells))
            regions.append(BasicRegion(k, cells, clockwise_cycle_matrix(face.n, cycle)))
    return regions


def basic_cycles(face: Face) -> List[CycleMatrix]:
    """One clockwise cycle matrix per doubly directed region, region taken within its block.

    Raises:
        InvariantViolationError: If the number of regions differs from the dimension
    """
    matrices = [region.matrix for region in basic_regions(face)]
    if len(matrices) != face.dimension:
        raise InvariantViolationError(
            f"{len(matrices)} basic cycles for a face of dimension {face.dimension}"
        )
    return matrices


def simple_cycles(face: Face) -> List[List[Vertex]]:
    """Every simple cycle of the doubly graph as a vertex sequence."""
    graph = face.doubly_graph.to_networkx()
    return sorted(([tuple(v) for v in c] for c in nx.simple_cycles(graph)), key=lambda c: sorted(c))


def _check_cycle_in_face(face: Face, cycle: Sequence[Vertex]) -> FrozenSet[GridEdge]:
    edges = cycle_edges(cycle)
    missing = edges - face.doubly_graph.edges
    if missing:
        raise DomainError(f"edge {min(missing)} of the cycle is not doubly directed in the face")
    return edges


def cycle_sum_check(face: Face, cycle: Sequence[Vertex]) -> bool:
    """Check that the basic cycles inside a cycle sum to its clockwise matrix.

    Args:
        face: The face
        cycle: Simple cycle of the face's doubly graph as a vertex sequence

    Returns:
        True iff the identity holds

    Raises:
        DomainError: If the cycle is not a simple cycle of the doubly graph
    """
    edges = _check_cycle_in_face(face, cycle)
    decomposition = two_connected_components(face.doubly_graph)
    block = decomposition.block_of(min(edges))
    if not edges <= decomposition.components[block]:
        raise DomainError("cycle crosses between blocks")
    inside = bounded_regions(face.n, edges)
    if len(inside) != 1:
        raise InvariantViolationError("a simple cycle should bound exactly one region")
    interior = inside[0]
    total = np.zeros((face.n, face.n), dtype=np.int64)
    for region in basic_regions(face):
        if region.block == block and region.cells <= interior:
            total += region.matrix.to_array()
    expected = clockwise_cycle_matrix(face.n, order_cycle(edges)).to_array()
    return bool(np.array_equal(total, expected))


def edge_flow_grid_from_cycle(face: Face, cycle: Sequence[Vertex]) -> Face:
    """1-dimensional subface whose doubly graph is exactly the given cycle.

    Args:
        face: Face whose doubly graph has only even-degree vertices
        cycle: Simple cycle of the doubly graph

    Returns:
        An edge of the face

    Raises:
        DomainError: If some doubly-graph vertex has odd degree or the cycle
            is not in the face
    """
    g = face.doubly_graph
    odd = [v for v in g.vertices if g.degree(v) % 2]
    if odd:
        raise DomainError(f"doubly graph has odd-degree vertex {odd[0]}")
    edges = _check_cycle_in_face(face, cycle)
    indices = [edge_index(face.n, e) for e in edges]
    flip = {FORWARD: BACKWARD, BACKWARD: FORWARD}
    for a in face.vertices:
        codes = bytearray(asm_to_simple_flow_grid(a).codes)
        for k in indices:
            codes[k] = flip[codes[k]]
        try:
            b = simple_flow_grid_to_asm(SimpleFlowGrid(face.n, bytes(codes)))
        except InvalidFlowGridError:
            continue
        edge_face = smallest_face([a, b])
        if edge_face.doubly_graph.edges == edges:
            return edge_face
    raise InvariantViolationError("no vertex of the face carries the cycle as a directed cycle")
