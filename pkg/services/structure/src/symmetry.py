"""Estranged vertices and central symmetry of faces."""

import logging
from fractions import Fraction
from typing import Optional, Tuple

from packages.asm.core import Asm
from packages.asm.errors import DomainError, InvalidFlowGridError, InvariantViolationError
from packages.flowgrid.grid import (
    BACKWARD,
    DOUBLY,
    FORWARD,
    SimpleFlowGrid,
    asm_to_simple_flow_grid,
    simple_flow_grid_to_asm,
)
from services.faces.src.face import Face

logger = logging.getLogger(__name__)

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def has_even_degrees(face: Face) -> bool:
    g = face.doubly_graph
    return all(g.degree(v) % 2 == 0 for v in g.vertices)


def estranged_partner(face: Face, a: Asm) -> Optional[Asm]:
    """The vertex whose grid reverses every doubly edge of the face relative to A.

    Args:
        face: The face
        a: A vertex of the face

    Returns:
        The estranged vertex, or None when some doubly-graph vertex has odd degree

    Raises:
        DomainError: If A is not a vertex of the face
    """
    if not face.contains_vertex(a):
        raise DomainError(f"matrix is not a vertex of the face:\n{a}")
    if not has_even_degrees(face):
        return None
    flip = {FORWARD: BACKWARD, BACKWARD: FORWARD}
    codes = bytes(
        flip[c] if d == DOUBLY else c
        for c, d in zip(asm_to_simple_flow_grid(a).codes, face.grid.codes)
    )
    try:
        return simple_flow_grid_to_asm(SimpleFlowGrid(face.n, codes))
    except InvalidFlowGridError as exc:
        raise InvariantViolationError("reversing the doubly edges broke a vertex rule") from exc


def center(face: Face) -> Optional[RationalMatrix]:
    """Common midpoint (A + B)/2 of estranged pairs, or None if the face is not symmetric.

    Raises:
        InvariantViolationError: If two estranged pairs have different midpoints
    """
    if not has_even_degrees(face):
        return None
    midpoint: Optional[RationalMatrix] = None
    for a in face.vertices:
        b = estranged_partner(face, a)
        current = tuple(
            tuple(Fraction(x + y, 2) for x, y in zip(row_a, row_b))
            for row_a, row_b in zip(a.rows, b.rows)
        )
        if midpoint is None:
            midpoint = current
        elif current != midpoint:
            raise InvariantViolationError("estranged pairs have different midpoints")
    return midpoint


def is_centrally_symmetric(face: Face) -> bool:
    """True iff every doubly-graph vertex has degree 2 or 4.

    When true, the common midpoint of all estranged pairs is verified.
    """
    if not has_even_degrees(face):
        return False
    center(face)
    return True
