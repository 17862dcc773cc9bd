"""Doubly directed graphs of elementary flow grids and their bounded regions."""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from packages.asm.errors import DomainError, InvariantViolationError

from .grid import EdgeKind, ElementaryFlowGrid, GridEdge, Vertex

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


class DegreeProfile(NamedTuple):
    """Counts of doubly-graph vertices by degree."""

    v2: int
    v3: int
    v4: int


@dataclass(frozen=True)
class DoublyDirectedGraph:
    """Undirected graph on the doubly directed edges of a flow grid."""

    n: int
    edges: FrozenSet[GridEdge]
    _adjacency: Dict[Vertex, List[Tuple[Vertex, GridEdge]]] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        adjacency: Dict[Vertex, List[Tuple[Vertex, GridEdge]]] = defaultdict(list)
        for edge in sorted(self.edges):
            a, b = edge.endpoints
            adjacency[a].append((b, edge))
            adjacency[b].append((a, edge))
        object.__setattr__(self, "_adjacency", dict(adjacency))

    @property
    def vertices(self) -> List[Vertex]:
        return sorted(self._adjacency)

    def degree(self, v: Vertex) -> int:
        return len(self._adjacency.get(v, ()))

    def neighbors(self, v: Vertex) -> List[Tuple[Vertex, GridEdge]]:
        """(neighbor, edge) pairs at v, ordered by edge."""
        return list(self._adjacency.get(v, ()))

    def is_empty(self) -> bool:
        return not self.edges

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for edge in sorted(self.edges):
            a, b = edge.endpoints
            graph.add_edge(a, b, edge=edge)
        return graph

    def restricted(self, edges: Iterable[GridEdge]) -> "DoublyDirectedGraph":
        return DoublyDirectedGraph(self.n, frozenset(edges))


def doubly_directed_graph(e: ElementaryFlowGrid) -> DoublyDirectedGraph:
    """Undirected graph of the doubly directed edges of an elementary flow grid."""
    return DoublyDirectedGraph(e.n, frozenset(e.doubly_edges()))


def doubly_directed_regions(g: DoublyDirectedGraph) -> int:
    """Number of bounded regions of the planar grid embedding, |E| - |V| + components."""
    if g.is_empty():
        return 0
    components = nx.number_connected_components(g.to_networkx())
    return len(g.edges) - len(g.vertices) + components


def degree_profile(g: DoublyDirectedGraph) -> DegreeProfile:
    """Count vertices of degree 2, 3 and 4.

    Raises:
        InvariantViolationError: If a vertex has degree 1
    """
    counts = {2: 0, 3: 0, 4: 0}
    for v in g.vertices:
        d = g.degree(v)
        if d not in counts:
            raise InvariantViolationError(f"doubly graph vertex {v} has degree {d}")
        counts[d] += 1
    return DegreeProfile(counts[2], counts[3], counts[4])


def bridges(g: DoublyDirectedGraph) -> List[GridEdge]:
    """Doubly edges lying on no cycle of doubly edges."""
    graph = g.to_networkx()
    return sorted(graph.edges[a, b]["edge"] for a, b in nx.bridges(graph))


def _cell_index(n: int, cell: Cell) -> int:
    r, c = cell
    return (r - 1) * (n - 1) + (c - 1)


def _cell_adjacencies(n: int) -> List[Tuple[Cell, Cell, GridEdge]]:
    """(cell, neighbor, separating edge); the outside is cell (0, 0)."""
    outside = (0, 0)
    pairs: List[Tuple[Cell, Cell, GridEdge]] = []
    for r in range(1, n):
        for c in range(1, n):
            if c < n - 1:
                pairs.append(((r, c), (r, c + 1), GridEdge(EdgeKind.VERTICAL, r, c + 1)))
            if r < n - 1:
                pairs.append(((r, c), (r + 1, c), GridEdge(EdgeKind.HORIZONTAL, r + 1, c)))
        pairs.append(((r, 1), outside, GridEdge(EdgeKind.VERTICAL, r, 1)))
        pairs.append(((r, n - 1), outside, GridEdge(EdgeKind.VERTICAL, r, n)))
    for c in range(1, n):
        pairs.append(((1, c), outside, GridEdge(EdgeKind.HORIZONTAL, 1, c)))
        pairs.append(((n - 1, c), outside, GridEdge(EdgeKind.HORIZONTAL, n, c)))
    return pairs


def bounded_regions(n: int, walls: Iterable[GridEdge]) -> List[FrozenSet[Cell]]:
    """Flood the unit cells of the grid, treating the given edges as walls.

    Args:
        n: Grid order
        walls: Edges that separate cells

    Returns:
        Cell sets of the bounded regions, ordered by their smallest cell
    """
    if n < 2:
        return []
    wall_set = set(walls)
    num_cells = (n - 1) ** 2
    outside_index = num_cells
    rows: List[int] = []
    cols: List[int] = []
    for a, b, edge in _cell_adjacencies(n):
        if edge in wall_set:
            continue
        ia = _cell_index(n, a)
        ib = outside_index if b == (0, 0) else _cell_index(n, b)
        rows.append(ia)
        cols.append(ib)
    data = np.ones(len(rows), dtype=np.int8)
    adjacency = coo_matrix((data, (rows, cols)), shape=(num_cells + 1, num_cells + 1))
    _, labels = connected_components(adjacency, directed=False)
    outside_label = labels[outside_index]
    groups: Dict[int, Set[Cell]] = defaultdict(set)
    for r in range(1, n):
        for c in range(1, n):
            label = labels[_cell_index(n, (r, c))]
            if label != outside_label:
                groups[int(label)].add((r, c))
    return sorted((frozenset(cells) for cells in groups.values()), key=min)


def region_cells(g: DoublyDirectedGraph) -> List[FrozenSet[Cell]]:
    """Bounded regions of the whole doubly graph as cell sets."""
    return bounded_regions(g.n, g.edges)


def cell_sides(cell: Cell) -> Tuple[GridEdge, GridEdge, GridEdge, GridEdge]:
    """Top, bottom, left and right edges of a unit cell."""
    r, c = cell
    return (
        GridEdge(EdgeKind.HORIZONTAL, r, c),
        GridEdge(EdgeKind.HORIZONTAL, r + 1, c),
        GridEdge(EdgeKind.VERTICAL, r, c),
        GridEdge(EdgeKind.VERTICAL, r, c + 1),
    )


def region_boundary(cells: FrozenSet[Cell]) -> FrozenSet[GridEdge]:
    """Edges separating the region from the rest of the plane."""
    counts: Dict[GridEdge, int] = defaultdict(int)
    for cell in cells:
        for side in cell_sides(cell):
            counts[side] += 1
    return frozenset(edge for edge, k in counts.items() if k == 1)


def order_cycle(edges: Iterable[GridEdge]) -> List[Vertex]:
    """Vertices of a simple cycle in walking order, starting at the smallest vertex.

    Raises:
        DomainError: If the edges do not form a single simple cycle
    """
    edge_list = sorted(set(edges))
    if len(edge_list) < 4:
        raise DomainError(f"{len(edge_list)} edges cannot form a grid cycle")
    adjacency: Dict[Vertex, List[Vertex]] = defaultdict(list)
    for edge in edge_list:
        a, b = edge.endpoints
        adjacency[a].append(b)
        adjacency[b].append(a)
    if any(len(nbrs) != 2 for nbrs in adjacency.values()):
        raise DomainError("edge set is not a simple cycle: a vertex has degree other than 2")
    start = min(adjacency)
    order = [start]
    previous, current = start, min(adjacency[start])
    while current != start:
        order.append(current)
        a, b = adjacency[current]
        previous, current = current, (b if a == previous else a)
    if len(order) != len(adjacency):
        raise DomainError("edge set is not connected; expected a single cycle")
    return order
