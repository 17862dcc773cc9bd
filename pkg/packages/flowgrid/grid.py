"""Simple and elementary flow grids over the internal edges of the n x n grid.

Orientation convention: a horizontal edge (i,j)-(i,j+1) is forward when it
points right, a vertical edge (i,j)-(i+1,j) is forward when it points down.
A horizontal edge is forward iff the row prefix W[i][j] is 1 and a vertical
edge is forward iff the column prefix N[i][j] is 1. Boundary arcs always point
outward and are never stored.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from packages.asm.core import Asm, partial_sums
from packages.asm.errors import InvalidFlowGridError, StructuralInputError

logger = logging.getLogger(__name__)

Vertex = Tuple[int, int]
# (edge index, constant): the constant is used when the index is None (boundary arc).
Term = Tuple[Optional[int], int]


class EdgeKind(str, Enum):
    """Internal edge direction; horizontal sorts before vertical."""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class EdgeState(str, Enum):
    """State of an internal edge in a flow grid."""

    FORWARD = "F"
    BACKWARD = "B"
    DOUBLY = "D"


# Two bits per edge; the union of two grids is the bitwise OR of their codes.
STATE_CODES: Dict[EdgeState, int] = {
    EdgeState.FORWARD: 0b01,
    EdgeState.BACKWARD: 0b10,
    EdgeState.DOUBLY: 0b11,
}
CODE_STATES: Dict[int, EdgeState] = {code: state for state, code in STATE_CODES.items()}
FORWARD = STATE_CODES[EdgeState.FORWARD]
BACKWARD = STATE_CODES[EdgeState.BACKWARD]
DOUBLY = STATE_CODES[EdgeState.DOUBLY]


@dataclass(frozen=True, order=True)
class GridEdge:
    """Internal edge anchored at (i, j), 1-based.

    Horizontal edges join (i,j) and (i,j+1); vertical edges join (i,j) and (i+1,j).
    """

    kind: EdgeKind
    i: int
    j: int

    @property
    def endpoints(self) -> Tuple[Vertex, Vertex]:
        if self.kind == EdgeKind.HORIZONTAL:
            return (self.i, self.j), (self.i, self.j + 1)
        return (self.i, self.j), (self.i + 1, self.j)

    @property
    def is_horizontal(self) -> bool:
        return self.kind == EdgeKind.HORIZONTAL

    def __str__(self) -> str:
        (a, b), (c, d) = self.endpoints
        return f"({a},{b})-({c},{d})"


def edge_count(n: int) -> int:
    """Number of internal edges, 2n(n-1)."""
    return 2 * n * (n - 1)


def edge_index(n: int, edge: GridEdge) -> int:
    """Position of an edge in the canonical order: horizontal first, row-major."""
    if edge.kind == EdgeKind.HORIZONTAL:
        return (edge.i - 1) * (n - 1) + (edge.j - 1)
    return n * (n - 1) + (edge.i - 1) * n + (edge.j - 1)


@lru_cache(maxsize=None)
def all_edges(n: int) -> Tuple[GridEdge, ...]:
    """All internal edges of the n x n grid in canonical order."""
    horizontal = [GridEdge(EdgeKind.HORIZONTAL, i, j) for i in range(1, n + 1) for j in range(1, n)]
    vertical = [GridEdge(EdgeKind.VERTICAL, i, j) for i in range(1, n) for j in range(1, n + 1)]
    return tuple(horizontal + vertical)


@lru_cache(maxsize=None)
def vertex_terms(n: int) -> Dict[Vertex, Tuple[Term, Term, Term, Term]]:
    """Prefix values around each vertex as (up, down, left, right) terms.

    The six-configuration rule at (i,j) reads down - up == right - left, and
    that common difference is the ASM entry a_ij.
    """
    terms: Dict[Vertex, Tuple[Term, Term, Term, Term]] = {}
    horizontal, vertical = EdgeKind.HORIZONTAL, EdgeKind.VERTICAL
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            up = (None, 0) if i == 1 else (edge_index(n, GridEdge(vertical, i - 1, j)), 0)
            down = (None, 1) if i == n else (edge_index(n, GridEdge(vertical, i, j)), 0)
            left = (None, 0) if j == 1 else (edge_index(n, GridEdge(horizontal, i, j - 1)), 0)
            right = (None, 1) if j == n else (edge_index(n, GridEdge(horizontal, i, j)), 0)
            terms[(i, j)] = (up, down, left, right)
    return terms


def _check_codes(n: int, codes: bytes, allowed: Sequence[int]) -> None:
    if n < 1:
        raise StructuralInputError(f"grid order must be positive, got {n}", n)
    if len(codes) != edge_count(n):
        raise StructuralInputError(
            f"expected {edge_count(n)} edge states for n={n}, got {len(codes)}", codes
        )
    bad = [k for k, c in enumerate(codes) if c not in allowed]
    if bad:
        raise InvalidFlowGridError(f"invalid state code at edge {all_edges(n)[bad[0]]}")


@dataclass(frozen=True)
class SimpleFlowGrid:
    """One orientation of every internal edge; the flow grid of a single ASM."""

    n: int
    codes: bytes

    def __post_init__(self):
        _check_codes(self.n, self.codes, (FORWARD, BACKWARD))

    def orientation(self, edge: GridEdge) -> EdgeState:
        return CODE_STATES[self.codes[edge_index(self.n, edge)]]

    def value(self, index: int) -> int:
        """Prefix value carried by an edge: 1 for forward, 0 for backward."""
        return 1 if self.codes[index] == FORWARD else 0

    def as_elementary(self) -> "ElementaryFlowGrid":
        return ElementaryFlowGrid(self.n, self.codes)


@dataclass(frozen=True)
class ElementaryFlowGrid:
    """Per-edge state (fixed forward, fixed backward or doubly) of a face of ASM_n."""

    n: int
    codes: bytes

    def __post_init__(self):
        _check_codes(self.n, self.codes, (FORWARD, BACKWARD, DOUBLY))

    @classmethod
    def from_values(cls, n: int, values: Sequence[Optional[int]]) -> "ElementaryFlowGrid":
        """Build from prefix values per edge: 1 forward, 0 backward, None doubly."""
        return cls(n, bytes(DOUBLY if v is None else (FORWARD if v else BACKWARD) for v in values))

    def state(self, edge: GridEdge) -> EdgeState:
        return CODE_STATES[self.codes[edge_index(self.n, edge)]]

    def values(self) -> List[Optional[int]]:
        """Prefix value per edge in canonical order, None where doubly."""
        return [None if c == DOUBLY else (1 if c == FORWARD else 0) for c in self.codes]

    def doubly_edges(self) -> List[GridEdge]:
        edges = all_edges(self.n)
        return [edges[k] for k, c in enumerate(self.codes) if c == DOUBLY]

    @property
    def num_doubly(self) -> int:
        return sum(1 for c in self.codes if c == DOUBLY)

    def is_simple(self) -> bool:
        return DOUBLY not in self.codes

    def contains(self, other: "ElementaryFlowGrid") -> bool:
        """Sub-grid relation: every edge state of other is allowed by self."""
        if other.n != self.n:
            return False
        return all((b & ~a) == 0 for a, b in zip(self.codes, other.codes))

    def admits(self, grid: SimpleFlowGrid) -> bool:
        """True iff the simple grid agrees with every fixed edge."""
        return self.contains(grid.as_elementary())

    @property
    def key(self) -> bytes:
        """Canonical binary encoding, used for deduplication."""
        return self.encode()

    def encode(self) -> bytes:
        """Pack 2 bits per edge after a leading byte holding n."""
        packed = bytearray([self.n])
        for start in range(0, len(self.codes), 4):
            byte = 0
            for offset, code in enumerate(self.codes[start : start + 4]):
                byte |= code << (2 * offset)
            packed.append(byte)
        return bytes(packed)

    @classmethod
    def decode(cls, data: bytes) -> "ElementaryFlowGrid":
        if not data:
            raise StructuralInputError("empty grid encoding", data)
        n = data[0]
        total = edge_count(n)
        codes = bytearray()
        for byte in data[1:]:
            for offset in range(4):
                if len(codes) < total:
                    codes.append((byte >> (2 * offset)) & 0b11)
        return cls(n, bytes(codes))

    def to_json(self) -> Dict[str, Any]:
        n = self.n
        letters = [CODE_STATES[c].value for c in self.codes]
        horizontal = [letters[(i * (n - 1)) : (i + 1) * (n - 1)] for i in range(n)]
        offset = n * (n - 1)
        vertical = [letters[offset + i * n : offset + (i + 1) * n] for i in range(n - 1)]
        return {"n": n, "horizontal": horizontal, "vertical": vertical}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ElementaryFlowGrid":
        """Parse the {"n", "horizontal", "vertical"} form with F/B/D states."""
        try:
            n = int(data["n"])
            horizontal = data["horizontal"]
            vertical = data["vertical"]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralInputError("grid JSON needs n, horizontal and vertical", data) from exc
        if len(horizontal) != n or any(len(row) != n - 1 for row in horizontal):
            raise StructuralInputError("horizontal states must be n rows of n-1", data)
        if len(vertical) != n - 1 or any(len(row) != n for row in vertical):
            raise StructuralInputError("vertical states must be n-1 rows of n", data)
        try:
            states = [s for rows in (horizontal, vertical) for row in rows for s in row]
            codes = bytes(STATE_CODES[EdgeState(s)] for s in states)
        except ValueError as exc:
            raise InvalidFlowGridError(f"unknown edge state in {data}") from exc
        return cls(n, codes)


AnyGrid = Union[SimpleFlowGrid, ElementaryFlowGrid]


@lru_cache(maxsize=65536)
def asm_to_simple_flow_grid(a: Asm) -> SimpleFlowGrid:
    """Simple flow grid of an ASM.

    Args:
        a: A valid Asm

    Returns:
        SimpleFlowGrid with horizontal edge (i,j) forward iff W[i][j] = 1 and
        vertical edge (i,j) forward iff N[i][j] = 1
    """
    n = a.n
    sums = partial_sums(a)
    codes = bytearray()
    for i in range(n):
        for j in range(n - 1):
            codes.append(FORWARD if sums.W[i][j] == 1 else BACKWARD)
    for i in range(n - 1):
        for j in range(n):
            codes.append(FORWARD if sums.N[i][j] == 1 else BACKWARD)
    return SimpleFlowGrid(n, bytes(codes))


def _term_value(term: Term, values: Sequence[int]) -> int:
    index, constant = term
    return constant if index is None else values[index]


def simple_flow_grid_to_asm(g: SimpleFlowGrid) -> Asm:
    """Recover the ASM of a simple flow grid.

    Raises:
        InvalidFlowGridError: If some vertex is not one of the six configurations
    """
    n = g.n
    values = [1 if c == FORWARD else 0 for c in g.codes]
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            up, down, left, right = vertex_terms(n)[(i, j)]
            vertical = _term_value(down, values) - _term_value(up, values)
            horizontal = _term_value(right, values) - _term_value(left, values)
            if vertical != horizontal:
                raise InvalidFlowGridError(
                    f"vertex ({i},{j}) is not one of the six configurations", vertex=(i, j)
                )
            row.append(vertical)
        rows.append(tuple(row))
    return Asm(tuple(rows))


def union(grids: Sequence[AnyGrid]) -> ElementaryFlowGrid:
    """Union of the edge sets of flow grids.

    Args:
        grids: Nonempty list of grids of one order

    Returns:
        ElementaryFlowGrid, fixed where all grids agree and doubly elsewhere

    Raises:
        StructuralInputError: If the list is empty or mixes orders
    """
    if not grids:
        raise StructuralInputError("union needs at least one grid", grids)
    orders = {g.n for g in grids}
    if len(orders) != 1:
        raise StructuralInputError(f"grids of mixed order {sorted(orders)}", grids)
    if edge_count(grids[0].n) == 0:
        return ElementaryFlowGrid(grids[0].n, b"")
    stacked = np.frombuffer(b"".join(g.codes for g in grids), dtype=np.uint8)
    combined = np.bitwise_or.reduce(stacked.reshape(len(grids), -1), axis=0)
    return ElementaryFlowGrid(grids[0].n, combined.astype(np.uint8).tobytes())
