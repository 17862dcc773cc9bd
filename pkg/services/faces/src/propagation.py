"""Closure propagation and completion search over partially fixed flow grids.

Edge values are prefix sums: 1 for a forward edge, 0 for a backward edge and
None while the edge is still doubly directed.
"""

import logging
from collections import deque
from functools import lru_cache
from itertools import product
from typing import Deque, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from packages.asm.errors import InvariantViolationError
from packages.flowgrid.grid import Vertex, all_edges, vertex_terms

logger = logging.getLogger(__name__)

Values = List[Optional[int]]


class ClosureContradiction(InvariantViolationError):
    """No orientation of the free edges at a vertex satisfies its configuration rule."""

    def __init__(self, vertex: Vertex):
        super().__init__(f"no valid configuration remains at vertex {vertex}")
        self.vertex = vertex


@lru_cache(maxsize=None)
def _edge_endpoints(n: int) -> Tuple[Tuple[Vertex, Vertex], ...]:
    return tuple(edge.endpoints for edge in all_edges(n))


def _surviving_assignments(
    terms, values: Sequence[Optional[int]], unknown: List[int]
) -> List[Tuple[int, ...]]:
    up, down, left, right = terms
    surviving = []
    for choice in product((0, 1), repeat=len(unknown)):
        assigned: Dict[int, int] = dict(zip(unknown, choice))

        def value(term) -> int:
            index, constant = term
            if index is None:
                return constant
            known = values[index]
            return assigned[index] if known is None else known

        if value(down) - value(up) == value(right) - value(left):
            surviving.append(choice)
    return surviving


def propagate(
    n: int, values: Sequence[Optional[int]], changed: Optional[Iterable[int]] = None
) -> Values:
    """Force every edge whose value is determined by local vertex constraints.

    At each vertex the assignments of its free incident edges that satisfy
    down - up == right - left are enumerated; an edge taking a single value
    across all of them is fixed, and the vertices at both of its ends are
    revisited.

    Args:
        n: Grid order
        values: Edge values in canonical order
        changed: Indices of edges fixed since the last closure; None checks
            every vertex

    Returns:
        The closed value list

    Raises:
        ClosureContradiction: If some vertex has no valid configuration left
    """
    result: Values = list(values)
    terms = vertex_terms(n)
    endpoints = _edge_endpoints(n)
    worklist: Deque[Vertex] = deque()
    queued: Set[Vertex] = set()

    def push(v: Vertex) -> None:
        if v not in queued:
            queued.add(v)
            worklist.append(v)

    if changed is None:
        for v in terms:
            push(v)
    else:
        for index in changed:
            for v in endpoints[index]:
                push(v)

    while worklist:
        v = worklist.popleft()
        queued.discard(v)
        around = terms[v]
        unknown = [index for index, _ in around if index is not None and result[index] is None]
        surviving = _surviving_assignments(around, result, unknown)
        if not surviving:
            raise ClosureContradiction(v)
        for position, index in enumerate(unknown):
            seen = {choice[position] for choice in surviving}
            if len(seen) == 1:
                result[index] = seen.pop()
                for w in endpoints[index]:
                    if w != v:
                        push(w)
    return result


def iter_completions(n: int, values: Sequence[Optional[int]]) -> Iterator[List[int]]:
    """Yield every full assignment of edge values consistent with all vertices.

    Branches on the smallest free edge, forward first, and closes after each
    choice; branches that hit a contradiction are pruned.
    """

    def descend(current: Values, changed: Optional[List[int]]) -> Iterator[List[int]]:
        try:
            closed = propagate(n, current, changed)
        except ClosureContradiction as exc:
            logger.debug("pruned branch at vertex %s", exc.vertex)
            return
        free = next((k for k, v in enumerate(closed) if v is None), None)
        if free is None:
            yield [int(v) for v in closed]
            return
        for choice in (1, 0):
            branch = list(closed)
            branch[free] = choice
            yield from descend(branch, [free])

    yield from descend(list(values), None)
