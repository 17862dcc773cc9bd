"""Product decomposition of a face along the blocks of its doubly graph."""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from packages.asm.core import Asm
from packages.asm.errors import DomainError, InvalidFlowGridError, InvariantViolationError
from packages.flowgrid.grid import (
    GridEdge,
    SimpleFlowGrid,
    asm_to_simple_flow_grid,
    edge_index,
    simple_flow_grid_to_asm,
)
from services.faces.src.face import Face, smallest_face
from services.faces.src.lattice import face_lattice

from .blocks import two_connected_components

logger = logging.getLogger(__name__)


def factor_vertex(base: Asm, b: Asm, block: FrozenSet[GridEdge]) -> Asm:
    """C^k(B): B's orientation on the block's edges and the base vertex's elsewhere.

    Raises:
        InvariantViolationError: If the combined orientation is not a simple flow grid
    """
    n = base.n
    codes = bytearray(asm_to_simple_flow_grid(base).codes)
    b_codes = asm_to_simple_flow_grid(b).codes
    for edge in block:
        k = edge_index(n, edge)
        codes[k] = b_codes[k]
    try:
        return simple_flow_grid_to_asm(SimpleFlowGrid(n, bytes(codes)))
    except InvalidFlowGridError as exc:
        raise InvariantViolationError("block restriction is not a simple flow grid") from exc


@dataclass
class ProductDecomposition:
    """Factors of a face, one per block, with the vertex correspondence B -> (C^1(B), ...)."""

    face: Face
    base: Asm
    blocks: Tuple[FrozenSet[GridEdge], ...]
    factors: List[Face]
    mapping: Dict[Asm, Tuple[Asm, ...]] = field(default_factory=dict)

    def vertex_count_matches(self) -> bool:
        expected = 1
        for factor in self.factors:
            expected *= len(factor.vertices)
        return expected == len(self.face.vertices)

    def is_bijection(self) -> bool:
        """The map hits every tuple of factor vertices exactly once."""
        images = set(self.mapping.values())
        targets = set(product(*(f.vertices for f in self.factors)))
        return len(images) == len(self.mapping) and images == targets

    def differences_add_up(self) -> bool:
        """B - A equals the sum over blocks of C^k(B) - A."""
        base = self.base.to_array()
        for b, parts in self.mapping.items():
            total = sum((p.to_array() - base for p in parts), np.zeros_like(base))
            if not np.array_equal(b.to_array() - base, total):
                return False
        return True

    def lattice_matches_product(self) -> bool:
        """Nonempty faces of the face correspond to tuples of nonempty factor faces."""
        face_sets = set(face_lattice(self.face).vertex_sets().values())
        factor_sets = [list(face_lattice(f).vertex_sets().values()) for f in self.factors]
        seen = set()
        for choice in product(*factor_sets):
            members = frozenset(
                b for b, parts in self.mapping.items() if all(p in s for p, s in zip(parts, choice))
            )
            if members not in face_sets:
                logger.debug("factor-face tuple maps to a non-face of %d vertices", len(members))
                return False
            seen.add(members)
        return len(seen) == len(face_sets)


def product_decomposition(face: Face, base: Optional[Asm] = None) -> ProductDecomposition:
    """Split a face into the product of its block factors.

    Args:
        face: Face whose doubly graph has at least two blocks
        base: Base vertex A; defaults to the smallest vertex

    Returns:
        ProductDecomposition with one factor per block

    Raises:
        DomainError: If the doubly graph has fewer than two blocks or base is
            not a vertex
        InvariantViolationError: If the vertex counts do not multiply
    """
    decomposition = two_connected_components(face.doubly_graph)
    if len(decomposition) < 2:
        raise DomainError("doubly graph is 2-connected; no nontrivial product")
    if base is None:
        base = face.vertices[0]
    elif not face.contains_vertex(base):
        raise DomainError(f"base is not a vertex of the face:\n{base}")

    mapping = {
        b: tuple(factor_vertex(base, b, block) for block in decomposition.components)
        for b in face.vertices
    }
    factors = []
    for k in range(len(decomposition)):
        factors.append(smallest_face(sorted({parts[k] for parts in mapping.values()})))
    result = ProductDecomposition(face, base, decomposition.components, factors, mapping)
    if not result.vertex_count_matches():
        raise InvariantViolationError("factor vertex counts do not multiply to the face's")
    return result
