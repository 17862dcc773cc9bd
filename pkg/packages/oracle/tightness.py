"""Brute-force face oracle built on the prefix-sum inequality description of ASM_n.

ASM_n is the set of real matrices whose row and column prefix sums lie in
[0, 1] with full line sums equal to 1. A face is cut out by declaring some
prefix sums tight at 0 or 1, so faces can be recovered by filtering ASMs. This
module depends on packages.asm only.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from packages.asm.core import Asm, common_order, enumerate_asms, partial_sums
from packages.asm.errors import CrossCheckError, ResourceGuardError
from packages.asm.linalg import exact_rank
from packages.asm.settings import get_settings

logger = logging.getLogger(__name__)


class PrefixConstraint(NamedTuple):
    """Row prefix W[i][j] (kind "row") or column prefix N[i][j] (kind "column"), 1-based."""

    kind: str
    i: int
    j: int

    def __str__(self) -> str:
        symbol = "W" if self.kind == "row" else "N"
        return f"{symbol}[{self.i}][{self.j}]"


class ConstraintState(str, Enum):
    """Whether a prefix sum is constant over a vertex set."""

    FIXED_0 = "fixed_at_0"
    FIXED_1 = "fixed_at_1"
    FREE = "free"


_GRID_LETTER_STATES = {
    "F": ConstraintState.FIXED_1,
    "B": ConstraintState.FIXED_0,
    "D": ConstraintState.FREE,
}


def prefix_constraints(n: int) -> List[PrefixConstraint]:
    """All 2n^2 prefix constraints: row prefixes first, then column prefixes."""
    rows = [PrefixConstraint("row", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    cols = [PrefixConstraint("column", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return rows + cols


def prefix_value(a: Asm, constraint: PrefixConstraint) -> int:
    sums = partial_sums(a)
    table = sums.W if constraint.kind == "row" else sums.N
    return table[constraint.i - 1][constraint.j - 1]


def _prefix_vector(a: Asm) -> Tuple[int, ...]:
    sums = partial_sums(a)
    return tuple(x for row in sums.W for x in row) + tuple(x for row in sums.N for x in row)


@dataclass(frozen=True)
class TightnessProfile:
    """State of every prefix constraint, in prefix_constraints order."""

    n: int
    states: Tuple[ConstraintState, ...]

    def state(self, constraint: PrefixConstraint) -> ConstraintState:
        return dict(zip(prefix_constraints(self.n), self.states))[constraint]

    def fixed(self) -> Dict[int, int]:
        """Index -> tight value for every fixed constraint."""
        return {
            k: (1 if s == ConstraintState.FIXED_1 else 0)
            for k, s in enumerate(self.states)
            if s != ConstraintState.FREE
        }

    def free_constraints(self) -> List[PrefixConstraint]:
        constraints = prefix_constraints(self.n)
        return [c for c, s in zip(constraints, self.states) if s == ConstraintState.FREE]

    def admits(self, a: Asm) -> bool:
        vector = _prefix_vector(a)
        return all(vector[k] == v for k, v in self.fixed().items())


def profile_from_vertices(vertices: Sequence[Asm]) -> TightnessProfile:
    """Profile that fixes exactly the prefix sums constant over the given ASMs."""
    n = common_order(vertices)
    vectors = [_prefix_vector(a) for a in vertices]
    states = []
    for k in range(2 * n * n):
        values = {v[k] for v in vectors}
        if len(values) > 1:
            states.append(ConstraintState.FREE)
        else:
            states.append(ConstraintState.FIXED_1 if values.pop() == 1 else ConstraintState.FIXED_0)
    return TightnessProfile(n, tuple(states))


@dataclass
class Discrepancy:
    """Disagreement between the flow grid of a face and the oracle."""

    face: str
    constraint: str
    flowgrid_state: str
    oracle_state: str
    witness_asm: Optional[Dict[str, Any]]

    def to_json(self) -> Dict[str, Any]:
        return {
            "face": self.face,
            "constraint": self.constraint,
            "flowgrid_state": self.flowgrid_state,
            "oracle_state": self.oracle_state,
            "witness_asm": self.witness_asm,
        }


def _grid_states(grid_json: Dict[str, Any]) -> Dict[PrefixConstraint, ConstraintState]:
    """Read the constraint states implied by a grid's F/B/D JSON form."""
    n = grid_json["n"]
    states: Dict[PrefixConstraint, ConstraintState] = {}
    for i, row in enumerate(grid_json["horizontal"], start=1):
        for j, letter in enumerate(row, start=1):
            states[PrefixConstraint("row", i, j)] = _GRID_LETTER_STATES[letter]
    for i, row in enumerate(grid_json["vertical"], start=1):
        for j, letter in enumerate(row, start=1):
            states[PrefixConstraint("column", i, j)] = _GRID_LETTER_STATES[letter]
    for k in range(1, n + 1):
        states[PrefixConstraint("row", k, n)] = ConstraintState.FIXED_1
        states[PrefixConstraint("column", n, k)] = ConstraintState.FIXED_1
    return states


def profile_of_face(face: Any) -> TightnessProfile:
    """Tightness profile of a face, checked against its flow grid.

    Args:
        face: Object exposing `vertices` (list of Asm) and `grid` (with
            `to_json()` and `encode()`)

    Returns:
        Profile computed from the vertices alone

    Raises:
        CrossCheckError: If a fixed grid edge and a constant prefix disagree
    """
    vertices = list(face.vertices)
    profile = profile_from_vertices(vertices)
    expected = _grid_states(face.grid.to_json())
    for constraint, oracle_state in zip(prefix_constraints(profile.n), profile.states):
        grid_state = expected[constraint]
        if grid_state == oracle_state:
            continue
        witness = None
        if grid_state != ConstraintState.FREE:
            wanted = 1 if grid_state == ConstraintState.FIXED_1 else 0
            witness = next(
                (a.to_json() for a in vertices if prefix_value(a, constraint) != wanted), None
            )
        discrepancy = Discrepancy(
            face=face.grid.encode().hex(),
            constraint=str(constraint),
            flowgrid_state=grid_state.value,
            oracle_state=oracle_state.value,
            witness_asm=witness,
        )
        logger.warning("oracle discrepancy: %s", discrepancy.to_json())
        raise CrossCheckError(discrepancy)
    return profile


def vertices_by_filter(n: int, profile: TightnessProfile) -> List[Asm]:
    """All n x n ASMs satisfying every fixed constraint of the profile.

    Raises:
        ResourceGuardError: If n exceeds the oracle limit
    """
    limit = get_settings().oracle_max_n
    if n > limit:
        raise ResourceGuardError("oracle n", n, limit)
    return [a for a in enumerate_asms(n) if profile.admits(a)]


def smallest_face_by_filter(vertices: Sequence[Asm]) -> List[Asm]:
    """Vertex set of the smallest face containing the given ASMs, by filtering."""
    n = common_order(vertices)
    return vertices_by_filter(n, profile_from_vertices(vertices))


def affine_dimension_oracle(face_or_vertices: Any) -> int:
    """Exact rank of {B - A : B a vertex} for the smallest vertex A.

    Args:
        face_or_vertices: A face exposing `vertices`, or a nonempty list of Asm

    Returns:
        Affine dimension of the vertex set
    """
    vertices = list(getattr(face_or_vertices, "vertices", face_or_vertices))
    common_order(vertices)
    base = vertices[0]
    differences = [
        [b - a for row_b, row_a in zip(v.rows, base.rows) for b, a in zip(row_b, row_a)]
        for v in vertices[1:]
    ]
    return exact_rank(differences)
