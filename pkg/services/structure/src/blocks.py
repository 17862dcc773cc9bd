"""Block (2-connected component) decomposition of doubly directed graphs."""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

import networkx as nx

from packages.asm.errors import InvariantViolationError
from packages.flowgrid.doubly import DoublyDirectedGraph
from packages.flowgrid.grid import GridEdge, Vertex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoConnectedDecomposition:
    """Blocks of a doubly directed graph and the cut vertices joining them."""

    components: Tuple[FrozenSet[GridEdge], ...]
    cut_vertices: Tuple[Vertex, ...]

    def __len__(self) -> int:
        return len(self.components)

    def block_of(self, edge: GridEdge) -> int:
        for k, block in enumerate(self.components):
            if edge in block:
                return k
        raise KeyError(edge)

    def block_vertices(self, k: int) -> FrozenSet[Vertex]:
        return frozenset(v for edge in self.components[k] for v in edge.endpoints)


def _check_cut_vertex(g: DoublyDirectedGraph, v: Vertex, blocks: List[FrozenSet[GridEdge]]) -> None:
    if g.degree(v) != 4:
        raise InvariantViolationError(f"cut vertex {v} has degree {g.degree(v)}, expected 4")
    for block in blocks:
        at_v = [edge for _, edge in g.neighbors(v) if edge in block]
        if not at_v:
            continue
        if len(at_v) != 2 or at_v[0].is_horizontal == at_v[1].is_horizontal:
            raise InvariantViolationError(f"cut vertex {v} does not split at right angles")


def two_connected_components(g: DoublyDirectedGraph) -> TwoConnectedDecomposition:
    """Decompose the doubly graph into blocks.

    Args:
        g: Doubly directed graph of a face

    Returns:
        Blocks ordered by their smallest edge, and sorted cut vertices

    Raises:
        InvariantViolationError: If a cut vertex is not of degree 4 with a
            right-angle split
    """
    if g.is_empty():
        return TwoConnectedDecomposition((), ())
    graph = g.to_networkx()
    blocks = [
        frozenset(graph.edges[a, b]["edge"] for a, b in component)
        for component in nx.biconnected_component_edges(graph)
    ]
    blocks.sort(key=min)
    cuts = sorted(nx.articulation_points(graph))
    for v in cuts:
        _check_cut_vertex(g, v, blocks)
    return TwoConnectedDecomposition(tuple(blocks), tuple(cuts))
