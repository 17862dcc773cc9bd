"""Tests for alternating sign matrices, enumeration and symmetries."""

import pytest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from packages.asm.core import (
    Asm,
    DihedralSymmetry,
    apply_symmetry,
    asm_difference,
    asm_violation,
    common_order,
    count_asms,
    enumerate_asms,
    iter_asms,
    partial_sums,
    permutation_matrices,
    validate_asm,
)
from packages.asm.errors import ResourceGuardError, StructuralInputError
from packages.asm.settings import get_settings
from tests.known_faces import D3, IDENTITY_3, SWAP_23


class TestValidateAsm:
    """Test cases for validate_asm and Asm construction."""

    def test_identity_is_asm(self):
        """Test that the identity matrix is an ASM."""
        assert validate_asm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) is True

    def test_d3_is_asm(self):
        """Test the 3x3 ASM with a -1 in the middle."""
        assert validate_asm([[0, 1, 0], [1, -1, 1], [0, 1, 0]]) is True

    def test_line_sum_two_rejected(self):
        """Test that a row summing to 2 is not an ASM."""
        assert validate_asm([[1, 1], [0, 0]]) is False

    def test_negative_prefix_rejected(self):
        """Test that a row starting with -1 is not an ASM."""
        assert validate_asm([[-1, 1, 1], [1, 0, 0], [1, 0, 0]]) is False

    def test_non_square_raises(self):
        """Test that a non-square matrix raises a structural error."""
        with pytest.raises(StructuralInputError):
            validate_asm([[1, 0], [0, 1], [0, 0]])

    def test_non_integer_raises(self):
        """Test that fractional entries raise a structural error."""
        with pytest.raises(StructuralInputError):
            validate_asm([[0.5, 0.5], [0.5, 0.5]])

    def test_empty_raises(self):
        """Test that an empty matrix raises."""
        with pytest.raises(StructuralInputError):
            validate_asm([])

    def test_from_rows_rejects_invalid(self):
        """Test that Asm.from_rows names the broken invariant."""
        with pytest.raises(StructuralInputError, match="alternating"):
            Asm.from_rows([[0, 1], [0, 1]])

    def test_violation_names_sum(self):
        """Test that a bad line sum is reported with the matrix."""
        with pytest.raises(StructuralInputError) as info:
            Asm.from_rows([[0, 1], [0, 1]])
        assert "[[0, 1], [0, 1]]" in str(info.value)
        assert "column 1 sums to 0, not 1" in str(info.value)

    def test_violation_names_alternation(self):
        """Test that a broken sign alternation is reported by position."""
        problem = asm_violation(((-1, 1, 1), (1, 0, 0), (1, 0, 0)))
        assert problem == "row 1 breaks sign alternation at column 1 (prefix sum -1)"
        assert asm_violation(((1, 1), (0, 0))) == (
            "row 1 breaks sign alternation at column 2 (prefix sum 2)"
        )
        assert asm_violation(D3.rows) is None

    def test_numpy_input_accepted(self):
        """Test construction from a numpy array."""
        a = Asm.from_rows(np.eye(3, dtype=int))
        assert a == IDENTITY_3

    def test_json_round_trip(self):
        """Test the {"n", "rows"} JSON form."""
        assert Asm.from_json(D3.to_json()) == D3

    def test_json_declared_order_mismatch(self):
        """Test that a wrong declared n is rejected."""
        with pytest.raises(StructuralInputError):
            Asm.from_json({"n": 4, "rows": [[1, 0], [0, 1]]})

    def test_entry_is_one_based(self):
        """Test 1-based entry access."""
        assert D3.entry(2, 2) == -1
        assert D3.entry(1, 2) == 1

    def test_is_permutation(self):
        """Test permutation detection."""
        assert IDENTITY_3.is_permutation() is True
        assert D3.is_permutation() is False


class TestPartialSums:
    """Test cases for partial sums."""

    def test_values_in_zero_one(self):
        """Test that every partial sum of every 4x4 ASM is 0 or 1."""
        for a in enumerate_asms(4):
            sums = partial_sums(a)
            for table in (sums.N, sums.S, sums.E, sums.W):
                assert all(v in (0, 1) for row in table for v in row)

    def test_d3_row_prefixes(self):
        """Test the row prefix sums of D3."""
        assert partial_sums(D3).W == ((0, 1, 1), (1, 0, 1), (0, 1, 1))

    def test_d3_column_prefixes(self):
        """Test the column prefix sums of D3."""
        assert partial_sums(D3).N == ((0, 1, 0), (1, 0, 1), (1, 1, 1))

    def test_complementary_sums(self):
        """Test that N plus S minus the entry is the full column sum."""
        sums = partial_sums(D3)
        for i in range(3):
            for j in range(3):
                assert sums.N[i][j] + sums.S[i][j] - D3.rows[i][j] == 1
                assert sums.W[i][j] + sums.E[i][j] - D3.rows[i][j] == 1


class TestEnumeration:
    """Test cases for enumerate_asms and count_asms."""

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)])
    def test_enumeration_matches_counts(self, n, expected):
        """Test enumerated counts against the known sequence."""
        assert len(enumerate_asms(n)) == expected
        assert count_asms(n) == expected

    def test_count_six(self):
        """Test the product formula at n = 6."""
        assert count_asms(6) == 7436

    def test_count_rejects_zero(self):
        """Test that n = 0 is rejected."""
        with pytest.raises(StructuralInputError):
            count_asms(0)

    def test_enumeration_is_sorted_and_distinct(self):
        """Test lexicographic order and no duplicates."""
        asms = enumerate_asms(4)
        assert asms == sorted(asms)
        assert len(set(asms)) == len(asms)

    def test_every_enumerated_matrix_validates(self):
        """Test that enumeration only produces ASMs."""
        assert all(validate_asm(a.rows) for a in enumerate_asms(4))

    def test_iter_matches_list(self):
        """Test that the lazy and eager forms agree."""
        assert list(iter_asms(3)) == enumerate_asms(3)

    def test_first_asm_of_three(self):
        """Test the lexicographically smallest 3x3 ASM."""
        assert enumerate_asms(3)[0] == Asm.from_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])

    def test_guard_on_large_n(self, monkeypatch):
        """Test that enumeration above ASMGRID_MAX_N is refused."""
        monkeypatch.setenv("ASMGRID_MAX_N", "3")
        get_settings.cache_clear()
        try:
            with pytest.raises(ResourceGuardError):
                enumerate_asms(4)
        finally:
            get_settings.cache_clear()

    def test_permutation_matrices(self):
        """Test that permutation matrices are the ASMs without -1 entries."""
        perms = permutation_matrices(4)
        assert len(perms) == 24
        assert perms == [a for a in enumerate_asms(4) if a.is_permutation()]


class TestSymmetries:
    """Test cases for the dihedral action."""

    @pytest.mark.parametrize("symmetry", list(DihedralSymmetry))
    def test_symmetry_permutes_asms(self, symmetry):
        """Test that every symmetry maps the 4x4 ASMs onto themselves."""
        asms = enumerate_asms(4)
        images = {apply_symmetry(a, symmetry) for a in asms}
        assert images == set(asms)

    def test_rotation_of_swap(self):
        """Test a half-turn on a concrete matrix."""
        rotated = apply_symmetry(SWAP_23, DihedralSymmetry.ROTATE_180)
        assert rotated == Asm.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])

    def test_d3_is_invariant(self):
        """Test that D3 is fixed by every symmetry."""
        assert all(apply_symmetry(D3, s) == D3 for s in DihedralSymmetry)


class TestHelpers:
    """Test cases for common_order and asm_difference."""

    def test_common_order_mixed(self):
        """Test that mixed orders are rejected."""
        with pytest.raises(StructuralInputError):
            common_order([D3, Asm.from_rows([[1]])])

    def test_common_order_empty(self):
        """Test that an empty list is rejected."""
        with pytest.raises(StructuralInputError):
            common_order([])

    def test_difference(self):
        """Test the integer difference of two ASMs."""
        diff = asm_difference(SWAP_23, D3)
        assert diff.tolist() == [[1, -1, 0], [-1, 1, 0], [0, 0, 0]]
