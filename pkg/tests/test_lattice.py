"""Tests for face lattices and the 2-level check."""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from packages.asm.errors import DomainError, ResourceGuardError
from packages.asm.settings import get_settings
from services.faces.src.face import face_from_grid, smallest_face, top_face
from services.faces.src.lattice import EMPTY_FACE_KEY, face_lattice, is_two_level
from tests.known_faces import D3, EDGE_PAIR, SQUARE, TRIANGLE, cubical_bipyramid_grid


class TestFaceLattice:
    """Test cases for face_lattice."""

    def test_asm3_f_vector(self):
        """Test the f-vector of ASM_3."""
        lattice = face_lattice(top_face(3))
        assert lattice.f_vector() == (7, 17, 18, 8, 1)
        assert len(lattice) == 52

    def test_euler_characteristic(self):
        """Test f0 - f1 + f2 - f3 = 0 for the 4-dimensional ASM_3."""
        f = face_lattice(top_face(3)).f_vector()
        assert f[0] - f[1] + f[2] - f[3] == 0

    def test_edge_lattice(self):
        """Test an edge: two vertices covered by the empty face."""
        face = smallest_face(EDGE_PAIR)
        lattice = face_lattice(face)
        assert lattice.f_vector() == (2, 1)
        assert len(lattice.covers[face.key]) == 2
        for facet in face.facets:
            assert lattice.covers[facet.key] == [EMPTY_FACE_KEY]
        assert lattice.covers[EMPTY_FACE_KEY] == []
        assert lattice.dimension_of(EMPTY_FACE_KEY) == -1

    def test_polygons(self):
        """Test the f-vectors of a triangle and a square."""
        assert face_lattice(smallest_face(TRIANGLE)).f_vector() == (3, 3, 1)
        assert face_lattice(smallest_face(SQUARE)).f_vector() == (4, 4, 1)

    def test_vertex_sets_are_distinct(self):
        """Test that distinct faces have distinct vertex sets."""
        lattice = face_lattice(top_face(3))
        sets = lattice.vertex_sets()
        assert len(set(sets.values())) == len(sets)

    def test_by_dimension(self):
        """Test grouping by dimension."""
        grouped = face_lattice(smallest_face(SQUARE)).by_dimension()
        assert sorted(grouped) == [0, 1, 2]
        assert len(grouped[1]) == 4

    def test_dimension_guard(self, monkeypatch):
        """Test that faces above ASMGRID_LATTICE_MAX_DIM are refused."""
        monkeypatch.setenv("ASMGRID_LATTICE_MAX_DIM", "3")
        get_settings.cache_clear()
        try:
            with pytest.raises(ResourceGuardError):
                face_lattice(top_face(3))
        finally:
            get_settings.cache_clear()

    def test_explicit_dimension_limit(self):
        """Test that max_dim overrides the configured lattice limit."""
        face = smallest_face(EDGE_PAIR)
        assert face_lattice(face, max_dim=1).f_vector() == (2, 1)
        with pytest.raises(ResourceGuardError):
            face_lattice(face, max_dim=0)


class TestTwoLevel:
    """Test cases for is_two_level."""

    def test_asm3_is_two_level(self):
        """Test one witness per facet of ASM_3."""
        report = is_two_level(top_face(3))
        assert report.is_two_level is True
        assert len(report.witnesses) == 8
        assert report.failures == []

    def test_witness_hyperplanes(self):
        """Test that each witness splits the vertices into facet and complement."""
        face = top_face(3)
        for witness in is_two_level(face).witnesses:
            facet_vertices = set(witness.facet.vertices)
            rest = set(face.vertices) - facet_vertices
            assert set(witness.complement.vertices) == rest
            assert witness.value in (0, 1)

    def test_square_and_triangle(self):
        """Test polygons are 2-level."""
        assert is_two_level(smallest_face(SQUARE)).is_two_level is True
        assert is_two_level(smallest_face(TRIANGLE)).is_two_level is True

    def test_cubical_bipyramid(self):
        """Test a 4-dimensional face with twelve facets."""
        report = is_two_level(face_from_grid(cubical_bipyramid_grid()))
        assert report.is_two_level is True
        assert len(report.witnesses) == 12

    def test_vertex_rejected(self):
        """Test that a vertex has no facets to check."""
        with pytest.raises(DomainError):
            is_two_level(smallest_face([D3]))
