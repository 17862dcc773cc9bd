"""Exact integer linear algebra: fraction-free rank and integer-span membership."""

from typing import Dict, List, Sequence, Tuple

import numpy as np

IntMatrix = Sequence[Sequence[int]]


def _to_python_rows(rows: IntMatrix) -> List[List[int]]:
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    return [[int(x) for x in row] for row in rows]


def exact_rank(rows: IntMatrix) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact and no fractions or floats appear.

    Args:
        rows: Integer matrix, one vector per row

    Returns:
        Exact rank
    """
    m = _to_python_rows(rows)
    if not m:
        return 0
    num_cols = len(m[0])
    rank = 0
    prev_pivot = 1
    for col in range(num_cols):
        pivot_row = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, len(m)):
            lead = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col + 1, num_cols):
                elt = pivot * row[c] - lead * top[c]
                q, rem = divmod(elt, prev_pivot)
                assert rem == 0
                row[c] = q
            row[col] = 0
        prev_pivot = pivot
        rank += 1
        if rank == len(m):
            break
    return rank


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended gcd: returns (x, y, g) with x*a + y*b == g and g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntegerLattice:
    """Integer span of a set of vectors, kept in echelon form.

    Rows are indexed by their leading position; inserting a vector combines it
    with the row at the same lead by an extended-gcd unimodular step.
    """

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._rows: Dict[int, List[int]] = {}

    @staticmethod
    def _lead(v: List[int]) -> int:
        return next((k for k, x in enumerate(v) if x), -1)

    def add_vector(self, vector: Sequence[int]) -> None:
        v = [int(x) for x in vector]
        if len(v) != self.dimension:
            raise ValueError(f"expected length {self.dimension}, got {len(v)}")
        while True:
            p = self._lead(v)
            if p < 0:
                return
            row = self._rows.get(p)
            if row is None:
                if v[p] < 0:
                    v = [-x for x in v]
                self._rows[p] = v
                return
            a, b = row[p], v[p]
            x, y, g = xgcd(a, b)
            new_row = [x * r + y * s for r, s in zip(row, v)]
            v = [(a // g) * s - (b // g) * r for r, s in zip(row, v)]
            self._rows[p] = new_row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def contains(self, vector: Sequence[int]) -> bool:
        """True iff the vector is an integer combination of the inserted vectors."""
        t = [int(x) for x in vector]
        if len(t) != self.dimension:
            raise ValueError(f"expected length {self.dimension}, got {len(t)}")
        for p in range(self.dimension):
            if not t[p]:
                continue
            row = self._rows.get(p)
            if row is None:
                return False
            q, rem = divmod(t[p], row[p])
            if rem:
                return False
            t = [s - q * r for r, s in zip(row, t)]
        return True


def in_integer_span(vector: Sequence[int], basis: IntMatrix) -> bool:
    """Check whether an integer vector lies in the integer span of the basis rows."""
    basis_rows = _to_python_rows(basis)
    lattice = IntegerLattice(len(vector))
    for row in basis_rows:
        lattice.add_vector(row)
    return lattice.contains(vector)
