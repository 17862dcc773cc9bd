"""Tests for blocks, cycle matrices, central symmetry and products of faces."""

import pytest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from packages.asm.errors import DomainError, InvariantViolationError
from packages.flowgrid.doubly import DoublyDirectedGraph
from packages.flowgrid.grid import EdgeKind, GridEdge
from services.faces.src.face import smallest_face, top_face
from services.structure.src.blocks import two_connected_components
from services.structure.src.cycles import (
    basic_cycles,
    clockwise_cycle_matrix,
    corners,
    cycle_edges,
    cycle_sum_check,
    difference_cycle_matrix,
    edge_flow_grid_from_cycle,
    is_cycle_matrix,
    simple_cycles,
)
from services.structure.src.product import factor_vertex, product_decomposition
from services.structure.src.symmetry import (
    center,
    estranged_partner,
    has_even_degrees,
    is_centrally_symmetric,
)
from tests.known_faces import (
    D3,
    EDGE_PAIR,
    ESTRANGED_A,
    ESTRANGED_B,
    ESTRANGED_CENTER,
    IDENTITY_3,
    SQUARE,
    SWAP_12,
    SWAP_23,
    TRIANGLE,
)

H = EdgeKind.HORIZONTAL
V = EdgeKind.VERTICAL

CELL_11_CYCLE = [(1, 1), (1, 2), (2, 2), (2, 1)]
CELL_22_CYCLE = [(2, 2), (2, 3), (3, 3), (3, 2)]
# Outer cycle of the triangle's theta graph.
TRIANGLE_OUTER = [(1, 1), (1, 2), (2, 2), (3, 2), (3, 1), (2, 1)]


@pytest.fixture
def square_face():
    """Square of ASM_3 whose doubly graph has two blocks."""
    return smallest_face(SQUARE)


@pytest.fixture
def triangle_face():
    """Triangle of ASM_3 with a theta doubly graph."""
    return smallest_face(TRIANGLE)


class TestBlocks:
    """Test cases for two_connected_components."""

    def test_square_has_two_blocks(self, square_face):
        """Test two cycles joined at the cut vertex (2,2)."""
        decomposition = two_connected_components(square_face.doubly_graph)
        assert len(decomposition) == 2
        assert decomposition.cut_vertices == ((2, 2),)
        assert decomposition.block_of(GridEdge(H, 1, 1)) == 0
        assert decomposition.block_of(GridEdge(H, 2, 2)) == 1
        assert decomposition.block_vertices(0) == frozenset(CELL_11_CYCLE)

    def test_top_face_is_one_block(self):
        """Test that the full grid is 2-connected."""
        decomposition = two_connected_components(top_face(3).doubly_graph)
        assert len(decomposition) == 1
        assert decomposition.cut_vertices == ()

    def test_empty_graph(self):
        """Test a vertex face."""
        assert len(two_connected_components(smallest_face([D3]).doubly_graph)) == 0

    def test_unknown_edge(self, square_face):
        """Test block_of on an edge outside the graph."""
        decomposition = two_connected_components(square_face.doubly_graph)
        with pytest.raises(KeyError):
            decomposition.block_of(GridEdge(V, 2, 1))

    def test_degree_three_cut_vertex_rejected(self):
        """Test that a cut vertex of degree 3 is an invariant violation."""
        left = [GridEdge(H, 1, 1), GridEdge(H, 2, 1), GridEdge(V, 1, 1), GridEdge(V, 1, 2)]
        right = [GridEdge(H, 1, 3), GridEdge(H, 2, 3), GridEdge(V, 1, 3), GridEdge(V, 1, 4)]
        g = DoublyDirectedGraph(4, frozenset(left + right + [GridEdge(H, 1, 2)]))
        with pytest.raises(InvariantViolationError):
            two_connected_components(g)


class TestCycleMatrices:
    """Test cases for cycle matrices."""

    def test_difference_of_edge_is_clockwise(self):
        """Test SWAP_23 - D3 on the cycle around cell (1,1)."""
        m = difference_cycle_matrix(D3, SWAP_23)
        assert m.entries == ((1, -1, 0), (-1, 1, 0), (0, 0, 0))
        assert m.is_clockwise is True
        assert m.cycle == tuple(CELL_11_CYCLE)

    def test_reverse_difference_is_counterclockwise(self):
        """Test that swapping the ends negates the matrix."""
        m = difference_cycle_matrix(SWAP_23, D3)
        assert m.is_clockwise is False
        assert np.array_equal(m.to_array(), -difference_cycle_matrix(D3, SWAP_23).to_array())

    def test_difference_needs_an_edge(self):
        """Test that a non-adjacent pair is rejected."""
        with pytest.raises(DomainError):
            difference_cycle_matrix(IDENTITY_3, D3)

    def test_clockwise_ignores_input_direction(self):
        """Test that both walking directions give the clockwise matrix."""
        forward = clockwise_cycle_matrix(3, CELL_11_CYCLE)
        backward = clockwise_cycle_matrix(3, list(reversed(CELL_11_CYCLE)))
        assert forward == backward
        assert forward.cycle[0] == (1, 1)

    def test_long_cycle_corners(self):
        """Test corners and the cycle-matrix check on a 2x1 rectangle."""
        turn = corners(TRIANGLE_OUTER)
        assert set(turn) == {(1, 1), (1, 2), (3, 2), (3, 1)}
        m = clockwise_cycle_matrix(3, TRIANGLE_OUTER)
        assert is_cycle_matrix(3, m.entries, m.cycle) is True
        assert m.to_json()["entries"] == [[1, -1, 0], [0, 0, 0], [-1, 1, 0]]

    def test_is_cycle_matrix_rejects(self):
        """Test wrong support and wrong shape."""
        assert is_cycle_matrix(3, [[1, -1], [-1, 1]], CELL_11_CYCLE) is False
        bad = [[1, -1, 0], [-1, 0, 1], [0, 1, -1]]
        assert is_cycle_matrix(3, bad, CELL_11_CYCLE) is False

    def test_cycle_edges(self):
        """Test edge extraction and its checks."""
        edges = cycle_edges(CELL_11_CYCLE + [(1, 1)])
        assert GridEdge(V, 1, 2) in edges
        assert len(edges) == 4
        with pytest.raises(DomainError):
            cycle_edges([(1, 1), (1, 2), (2, 2)])
        with pytest.raises(DomainError):
            cycle_edges([(1, 1), (1, 3), (2, 3), (2, 1)])


class TestBasicCycles:
    """Test cases for basic cycles and the cycle-sum identity."""

    def test_one_basic_cycle_per_region(self, triangle_face, square_face):
        """Test the count equals the dimension."""
        assert len(basic_cycles(triangle_face)) == 2
        assert len(basic_cycles(square_face)) == 2
        assert len(basic_cycles(top_face(3))) == 4

    def test_basic_cycles_are_clockwise(self):
        """Test every basic cycle is stored clockwise."""
        assert all(m.is_clockwise for m in basic_cycles(top_face(3)))

    def test_outer_cycle_sums_its_regions(self, triangle_face):
        """Test the identity on every simple cycle of the theta."""
        cycles = simple_cycles(triangle_face)
        assert len(cycles) == 3
        assert all(cycle_sum_check(triangle_face, c) for c in cycles)
        assert cycle_sum_check(triangle_face, TRIANGLE_OUTER) is True

    def test_cycle_sums_on_top_face(self):
        """Test the identity on every simple cycle of ASM_3."""
        face = top_face(3)
        assert all(cycle_sum_check(face, c) for c in simple_cycles(face))

    def test_cycle_outside_face(self, square_face):
        """Test a cycle using fixed edges is rejected."""
        with pytest.raises(DomainError):
            cycle_sum_check(square_face, [(1, 2), (1, 3), (2, 3), (2, 2)])

    def test_edge_from_cycle(self, square_face):
        """Test the edge whose doubly graph is a chosen cycle."""
        edge = edge_flow_grid_from_cycle(square_face, CELL_22_CYCLE)
        assert edge.dimension == 1
        assert edge.doubly_graph.edges == cycle_edges(CELL_22_CYCLE)
        assert set(edge.vertices) <= set(square_face.vertices)

    def test_edge_from_cycle_needs_even_degrees(self, triangle_face):
        """Test that odd-degree vertices are rejected."""
        with pytest.raises(DomainError):
            edge_flow_grid_from_cycle(triangle_face, CELL_11_CYCLE)


class TestSymmetry:
    """Test cases for estranged partners and central symmetry."""

    def test_estranged_pair(self):
        """Test the partner and the center of the estranged face."""
        face = smallest_face([ESTRANGED_A, ESTRANGED_B])
        assert has_even_degrees(face) is True
        assert estranged_partner(face, ESTRANGED_A) == ESTRANGED_B
        assert estranged_partner(face, ESTRANGED_B) == ESTRANGED_A
        assert center(face) == ESTRANGED_CENTER
        assert is_centrally_symmetric(face) is True

    def test_square_diagonals(self, square_face):
        """Test that the square's diagonals share a midpoint."""
        assert estranged_partner(square_face, IDENTITY_3) == D3
        assert estranged_partner(square_face, SWAP_12) == SWAP_23
        assert is_centrally_symmetric(square_face) is True

    def test_triangle_is_not_symmetric(self, triangle_face):
        """Test that a theta graph has odd-degree vertices."""
        assert estranged_partner(triangle_face, D3) is None
        assert center(triangle_face) is None
        assert is_centrally_symmetric(triangle_face) is False

    def test_partner_needs_a_vertex(self):
        """Test that a matrix outside the face raises."""
        with pytest.raises(DomainError):
            estranged_partner(smallest_face(EDGE_PAIR), IDENTITY_3)

    def test_edge_is_symmetric(self):
        """Test that every edge is centrally symmetric."""
        face = smallest_face(EDGE_PAIR)
        assert estranged_partner(face, D3) == SWAP_23


class TestProduct:
    """Test cases for the product decomposition."""

    def test_square_factors(self, square_face):
        """Test the two edge factors of the square with base I."""
        result = product_decomposition(square_face, base=IDENTITY_3)
        assert len(result.factors) == 2
        assert all(f.dimension == 1 for f in result.factors)
        assert result.mapping[D3] == (SWAP_12, SWAP_23)
        assert result.mapping[IDENTITY_3] == (IDENTITY_3, IDENTITY_3)

    def test_product_checks(self, square_face):
        """Test counts, bijection, differences and lattice."""
        result = product_decomposition(square_face)
        assert result.base == square_face.vertices[0]
        assert result.vertex_count_matches() is True
        assert result.is_bijection() is True
        assert result.differences_add_up() is True
        assert result.lattice_matches_product() is True

    def test_factor_vertex(self, square_face):
        """Test C^k(B) for a single block."""
        blocks = two_connected_components(square_face.doubly_graph).components
        assert factor_vertex(IDENTITY_3, D3, blocks[1]) == SWAP_23

    def test_two_connected_face_rejected(self, triangle_face):
        """Test that a single block has no product."""
        with pytest.raises(DomainError):
            product_decomposition(triangle_face)

    def test_base_must_be_vertex(self, square_face):
        """Test the base vertex check."""
        with pytest.raises(DomainError):
            product_decomposition(square_face, base=TRIANGLE[2])
