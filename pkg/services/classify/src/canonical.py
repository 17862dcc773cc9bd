"""Canonical labelling of vertex-facet incidence structures.

Colour refinement on the bipartite incidence graph, then individualization
of one vertex at a time until every vertex has its own colour. Each
discrete colouring orders the vertices; the certificate is the sorted list
of facet rows under that order and the smallest certificate wins.
"""

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

Certificate = Tuple[Tuple[int, ...], ...]
Colouring = List[int]


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant form of an incidence structure.

    `rows` holds one tuple of vertex positions per facet, sorted.
    """

    num_vertices: int
    rows: Certificate

    @property
    def num_facets(self) -> int:
        return len(self.rows)

    def digest(self) -> str:
        text = f"{self.num_vertices}:" + ";".join(",".join(map(str, row)) for row in self.rows)
        return hashlib.sha1(text.encode("ascii")).hexdigest()[:12]


def _adjacency(num_vertices: int, facets: Sequence[FrozenSet[int]]) -> List[List[int]]:
    # Nodes 0..V-1 are vertices, V..V+F-1 are facets.
    adjacency: List[List[int]] = [[] for _ in range(num_vertices + len(facets))]
    for f, members in enumerate(facets):
        node = num_vertices + f
        for v in members:
            adjacency[v].append(node)
            adjacency[node].append(v)
    return adjacency


def _relabel(signatures: Sequence[tuple]) -> Colouring:
    ranks = {sig: k for k, sig in enumerate(sorted(set(signatures)))}
    return [ranks[sig] for sig in signatures]


def _refine(colours: Colouring, adjacency: List[List[int]]) -> Colouring:
    current = colours
    while True:
        signatures = [
            (current[x], tuple(sorted(current[y] for y in adjacency[x])))
            for x in range(len(adjacency))
        ]
        refined = _relabel(signatures)
        if len(set(refined)) == len(set(current)):
            return refined
        current = refined


def _target_cell(colours: Colouring, num_vertices: int) -> Optional[List[int]]:
    cells: Dict[int, List[int]] = {}
    for v in range(num_vertices):
        cells.setdefault(colours[v], []).append(v)
    shared = [cell for colour, cell in sorted(cells.items()) if len(cell) > 1]
    return shared[0] if shared else None


def _certificate(
    colours: Colouring, num_vertices: int, facets: Sequence[FrozenSet[int]]
) -> Certificate:
    order = sorted(range(num_vertices), key=colours.__getitem__)
    position = {v: rank for rank, v in enumerate(order)}
    return tuple(sorted(tuple(sorted(position[v] for v in members)) for members in facets))


def canonical_form(num_vertices: int, facets: Sequence[FrozenSet[int]]) -> CanonicalForm:
    """Canonical form of the incidence structure of vertices 0..V-1 and facets.

    Args:
        num_vertices: Number of vertices
        facets: Vertex index sets, one per facet

    Returns:
        CanonicalForm equal for two inputs iff their incidences are isomorphic
    """
    adjacency = _adjacency(num_vertices, facets)
    start = _refine([0] * num_vertices + [1] * len(facets), adjacency)
    best: Optional[Certificate] = None
    leaves = 0
    stack = [start]
    while stack:
        colours = stack.pop()
        cell = _target_cell(colours, num_vertices)
        if cell is None:
            leaves += 1
            candidate = _certificate(colours, num_vertices, facets)
            if best is None or candidate < best:
                best = candidate
            continue
        for v in cell:
            individualized = _relabel([(c, 0 if x == v else 1) for x, c in enumerate(colours)])
            stack.append(_refine(individualized, adjacency))
    logger.debug("canonical form of %d vertices explored %d leaves", num_vertices, leaves)
    return CanonicalForm(num_vertices, best if best is not None else ())


def incidence_graph(num_vertices: int, facets: Sequence[FrozenSet[int]]) -> nx.Graph:
    """Bipartite vertex-facet graph; node attribute `side` is "vertex" or "facet"."""
    graph = nx.Graph()
    graph.add_nodes_from((("v", v) for v in range(num_vertices)), side="vertex")
    graph.add_nodes_from((("f", f) for f in range(len(facets))), side="facet")
    graph.add_edges_from((("v", v), ("f", f)) for f, members in enumerate(facets) for v in members)
    return graph


def incidences_isomorphic(
    first: Tuple[int, Sequence[FrozenSet[int]]], second: Tuple[int, Sequence[FrozenSet[int]]]
) -> bool:
    """Brute-force isomorphism test of two incidence structures via networkx."""
    return nx.is_isomorphic(
        incidence_graph(*first),
        incidence_graph(*second),
        node_match=lambda a, b: a["side"] == b["side"],
    )
