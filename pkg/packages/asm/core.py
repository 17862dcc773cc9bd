"""Alternating sign matrices: validation, enumeration, counting and partial sums."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ResourceGuardError, StructuralInputError
from .settings import get_settings

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]

# Entries are tried in this order so that enumeration is lexicographic by rows.
_ENTRY_ORDER = (-1, 0, 1)
_RowChoice = Tuple[Tuple[int, ...], List[int]]


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise StructuralInputError(f"entry {value!r} is not an integer", value)
    return int(value)


def _coerce_rows(m: Sequence[Sequence[Any]]) -> Rows:
    """Check shape and integrality, returning an immutable row tuple."""
    if isinstance(m, np.ndarray):
        m = m.tolist()
    try:
        rows = [list(row) for row in m]
    except TypeError as exc:
        raise StructuralInputError("matrix must be a sequence of rows", m) from exc
    n = len(rows)
    if n == 0:
        raise StructuralInputError("matrix is empty", m)
    if any(len(row) != n for row in rows):
        raise StructuralInputError(f"matrix is not square ({n} rows)", m)
    return tuple(tuple(_as_int(x) for x in row) for row in rows)


def _line_violation(kind: str, k: int, entries: Sequence[int]) -> Optional[str]:
    prefix = 0
    for position, value in enumerate(entries, start=1):
        prefix += value
        if prefix not in (0, 1):
            other = "column" if kind == "row" else "row"
            return f"{kind} {k} breaks sign alternation at {other} {position} (prefix sum {prefix})"
    if prefix != 1:
        return f"{kind} {k} sums to {prefix}, not 1"
    return None


def asm_violation(rows: Rows) -> Optional[str]:
    """First broken invariant of a square integer matrix, or None for an ASM."""
    n = len(rows)
    for i in range(n):
        problem = _line_violation("row", i + 1, rows[i])
        if problem:
            return problem
    for j in range(n):
        problem = _line_violation("column", j + 1, [rows[i][j] for i in range(n)])
        if problem:
            return problem
    return None


def validate_asm(m: Sequence[Sequence[Any]]) -> bool:
    """Check whether a square integer matrix is an alternating sign matrix.

    Every row and column prefix sum must lie in {0, 1} and every full line sum
    must be 1, which is equivalent to sign alternation starting and ending
    with +1.

    Args:
        m: Square matrix as nested sequences or a numpy array

    Returns:
        True if m is an ASM

    Raises:
        StructuralInputError: If m is not square or has non-integer entries
    """
    return asm_violation(_coerce_rows(m)) is None


@dataclass(frozen=True, order=True)
class Asm:
    """An n x n alternating sign matrix; ordering is lexicographic by rows."""

    rows: Rows

    @classmethod
    def from_rows(cls, m: Sequence[Sequence[Any]]) -> "Asm":
        """Build a validated Asm.

        Raises:
            StructuralInputError: If m is malformed or not alternating
        """
        rows = _coerce_rows(m)
        problem = asm_violation(rows)
        if problem:
            shown = [list(row) for row in rows]
            raise StructuralInputError(
                f"matrix {shown} is not an alternating sign matrix: {problem}", m
            )
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry a_ij with 1-based indices."""
        return self.rows[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def is_permutation(self) -> bool:
        return all(x >= 0 for row in self.rows for x in row)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Asm":
        """Parse the {"n", "rows"} form; n must agree with the row count."""
        try:
            rows = data["rows"]
        except (KeyError, TypeError) as exc:
            raise StructuralInputError("ASM JSON needs a 'rows' field", data) from exc
        asm = cls.from_rows(rows)
        if "n" in data and data["n"] != asm.n:
            raise StructuralInputError(f"declared n={data['n']} but got {asm.n} rows", data)
        return asm

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:2d}" for x in row) for row in self.rows)


@dataclass(frozen=True)
class PartialSums:
    """Prefix and suffix sums of an ASM, stored 0-based.

    N[i][j] sums column j down to row i, S[i][j] sums column j from row i down,
    W[i][j] sums row i up to column j, E[i][j] sums row i from column j right.
    """

    N: Rows
    S: Rows
    E: Rows
    W: Rows


def partial_sums(a: Asm) -> PartialSums:
    """Compute the four partial-sum arrays of an ASM.

    Args:
        a: A valid Asm

    Returns:
        PartialSums with every value in {0, 1}
    """
    arr = a.to_array()
    north = np.cumsum(arr, axis=0)
    south = np.cumsum(arr[::-1, :], axis=0)[::-1, :]
    west = np.cumsum(arr, axis=1)
    east = np.cumsum(arr[:, ::-1], axis=1)[:, ::-1]

    def freeze(x: np.ndarray) -> Rows:
        return tuple(tuple(int(v) for v in row) for row in x)

    return PartialSums(N=freeze(north), S=freeze(south), E=freeze(east), W=freeze(west))


def _check_order(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise StructuralInputError(f"grid order must be a positive integer, got {n!r}", n)


def iter_asms(n: int) -> Iterator[Asm]:
    """Yield every n x n ASM in lexicographic order by rows.

    Rows are built one at a time; the search state is the vector of column
    prefix sums, which must stay in {0, 1} and end as all ones.

    Raises:
        ResourceGuardError: If n exceeds the configured enumeration limit
    """
    _check_order(n)
    limit = get_settings().max_n
    if n > limit:
        raise ResourceGuardError("n", n, limit)

    rows: List[Tuple[int, ...]] = []

    def row_choices(col_prefix: List[int], last: bool) -> Iterator[_RowChoice]:
        row = [0] * n
        new_prefix = list(col_prefix)

        def place(j: int, row_prefix: int) -> Iterator[_RowChoice]:
            if j == n:
                if row_prefix == 1:
                    yield tuple(row), list(new_prefix)
                return
            for x in _ENTRY_ORDER:
                c = col_prefix[j] + x
                w = row_prefix + x
                if c not in (0, 1) or w not in (0, 1):
                    continue
                if last and c != 1:
                    continue
                row[j] = x
                new_prefix[j] = c
                yield from place(j + 1, w)
            row[j] = 0
            new_prefix[j] = col_prefix[j]

        yield from place(0, 0)

    def descend(i: int, col_prefix: List[int]) -> Iterator[Asm]:
        if i == n:
            yield Asm(tuple(rows))
            return
        for row, next_prefix in row_choices(col_prefix, i == n - 1):
            rows.append(row)
            yield from descend(i + 1, next_prefix)
            rows.pop()

    yield from descend(0, [0] * n)


def enumerate_asms(n: int) -> List[Asm]:
    """Return the complete, duplicate-free list of n x n ASMs.

    Args:
        n: Grid order, at most the configured limit (ASMGRID_MAX_N)

    Returns:
        All ASMs, lexicographic by rows
    """
    result = list(iter_asms(n))
    logger.debug("enumerated %d ASMs of order %d", len(result), n)
    return result


def count_asms(n: int) -> int:
    """Number of n x n ASMs by the product formula, in exact integer arithmetic.

    Args:
        n: Grid order

    Returns:
        prod_{j=0}^{n-1} (3j+1)! / (n+j)!
    """
    _check_order(n)
    numerator = 1
    denominator = 1
    for j in range(n):
        numerator *= math.factorial(3 * j + 1)
        denominator *= math.factorial(n + j)
    count, remainder = divmod(numerator, denominator)
    assert remainder == 0
    return count


def permutation_matrices(n: int) -> List[Asm]:
    """All n x n permutation matrices, lexicographic by rows."""
    _check_order(n)
    result = []
    for perm in permutations(range(n)):
        rows = tuple(tuple(1 if perm[i] == j else 0 for j in range(n)) for i in range(n))
        result.append(Asm(rows))
    return sorted(result)


class DihedralSymmetry(str, Enum):
    """Symmetries of the square acting on matrix positions."""

    IDENTITY = "identity"
    ROTATE_90 = "rotate_90"
    ROTATE_180 = "rotate_180"
    ROTATE_270 = "rotate_270"
    TRANSPOSE = "transpose"
    ANTI_TRANSPOSE = "anti_transpose"
    FLIP_ROWS = "flip_rows"
    FLIP_COLUMNS = "flip_columns"


_SYMMETRY_ACTIONS = {
    DihedralSymmetry.IDENTITY: lambda x: x,
    DihedralSymmetry.ROTATE_90: lambda x: np.rot90(x, 1),
    DihedralSymmetry.ROTATE_180: lambda x: np.rot90(x, 2),
    DihedralSymmetry.ROTATE_270: lambda x: np.rot90(x, 3),
    DihedralSymmetry.TRANSPOSE: lambda x: x.T,
    DihedralSymmetry.ANTI_TRANSPOSE: lambda x: np.rot90(x, 2).T,
    DihedralSymmetry.FLIP_ROWS: lambda x: x[::-1, :],
    DihedralSymmetry.FLIP_COLUMNS: lambda x: x[:, ::-1],
}


def apply_symmetry(a: Asm, symmetry: DihedralSymmetry) -> Asm:
    """Image of an ASM under a symmetry of the square; always an ASM."""
    image = _SYMMETRY_ACTIONS[DihedralSymmetry(symmetry)](a.to_array())
    return Asm(tuple(tuple(int(v) for v in row) for row in image))


def common_order(asms: Sequence[Asm]) -> int:
    """Return the shared order of a nonempty ASM collection.

    Raises:
        StructuralInputError: If the collection is empty or mixes orders
    """
    if not asms:
        raise StructuralInputError("at least one ASM is required", asms)
    orders = {a.n for a in asms}
    if len(orders) != 1:
        raise StructuralInputError(f"ASMs of mixed order {sorted(orders)}", asms)
    return orders.pop()


def asm_difference(b: Asm, a: Asm) -> np.ndarray:
    """Integer matrix b - a."""
    return b.to_array() - a.to_array()
