"""Tests for flow grids, their unions and doubly directed graphs."""

import pytest
import sys
import os
from itertools import product

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from packages.asm.core import enumerate_asms
from packages.asm.errors import (
    DomainError,
    InvalidFlowGridError,
    InvariantViolationError,
    StructuralInputError,
)
from packages.flowgrid.doubly import (
    DoublyDirectedGraph,
    bounded_regions,
    bridges,
    degree_profile,
    doubly_directed_graph,
    doubly_directed_regions,
    order_cycle,
    region_boundary,
    region_cells,
)
from packages.flowgrid.grid import (
    DOUBLY,
    EdgeKind,
    EdgeState,
    ElementaryFlowGrid,
    GridEdge,
    SimpleFlowGrid,
    all_edges,
    asm_to_simple_flow_grid,
    edge_count,
    edge_index,
    simple_flow_grid_to_asm,
    union,
    vertex_terms,
)
from packages.flowgrid.render import doubly_graph_to_dot, grid_to_dot, render_text_grid
from tests.known_faces import D3, IDENTITY_3, SWAP_23

H = EdgeKind.HORIZONTAL
V = EdgeKind.VERTICAL

# Doubly edges of the union of D3 and SWAP_23: the boundary of cell (1,1).
CELL_11 = [GridEdge(H, 1, 1), GridEdge(H, 2, 1), GridEdge(V, 1, 1), GridEdge(V, 1, 2)]


@pytest.fixture
def edge_pair_grid():
    """Union of the flow grids of D3 and SWAP_23."""
    return union([asm_to_simple_flow_grid(D3), asm_to_simple_flow_grid(SWAP_23)])


class TestEdges:
    """Test cases for edge indexing."""

    def test_edge_count(self):
        """Test 2n(n-1) internal edges."""
        assert [edge_count(n) for n in (1, 2, 3, 4)] == [0, 4, 12, 24]

    def test_horizontal_before_vertical(self):
        """Test the canonical edge order."""
        edges = all_edges(3)
        assert edges[0] == GridEdge(H, 1, 1)
        assert edges[6] == GridEdge(V, 1, 1)
        assert list(edges) == sorted(edges)

    def test_index_matches_order(self):
        """Test that edge_index inverts all_edges."""
        for k, edge in enumerate(all_edges(4)):
            assert edge_index(4, edge) == k

    def test_endpoints(self):
        """Test endpoint conventions and display."""
        assert GridEdge(H, 2, 1).endpoints == ((2, 1), (2, 2))
        assert GridEdge(V, 2, 1).endpoints == ((2, 1), (3, 1))
        assert str(GridEdge(V, 2, 1)) == "(2,1)-(3,1)"


class TestSimpleFlowGrid:
    """Test cases for the ASM to simple flow grid bijection."""

    def test_d3_orientations(self):
        """Test forward edges where the prefix sum is 1."""
        g = asm_to_simple_flow_grid(D3)
        assert g.orientation(GridEdge(H, 1, 1)) == EdgeState.BACKWARD
        assert g.orientation(GridEdge(H, 1, 2)) == EdgeState.FORWARD
        assert g.orientation(GridEdge(V, 2, 1)) == EdgeState.FORWARD

    def test_bijection_on_all_4x4(self):
        """Test that the inverse recovers every 4x4 ASM."""
        asms = enumerate_asms(4)
        grids = {asm_to_simple_flow_grid(a) for a in asms}
        assert len(grids) == len(asms)
        assert all(simple_flow_grid_to_asm(asm_to_simple_flow_grid(a)) == a for a in asms)

    def test_invalid_vertex_configuration(self):
        """Test that an all-forward 2x2 grid breaks the rule at (1,2)."""
        with pytest.raises(InvalidFlowGridError) as exc:
            simple_flow_grid_to_asm(SimpleFlowGrid(2, bytes([0b01] * 4)))
        assert exc.value.vertex == (1, 2)

    def test_doubly_code_rejected(self):
        """Test that a simple grid cannot hold doubly edges."""
        with pytest.raises(InvalidFlowGridError):
            SimpleFlowGrid(2, bytes([DOUBLY] * 4))

    def test_wrong_length_rejected(self):
        """Test the edge-count check."""
        with pytest.raises(StructuralInputError):
            SimpleFlowGrid(3, bytes([0b01] * 4))


class TestUnion:
    """Test cases for union and the sub-grid relation."""

    def test_union_marks_disagreements(self, edge_pair_grid):
        """Test that exactly the edges around cell (1,1) become doubly."""
        assert edge_pair_grid.doubly_edges() == sorted(CELL_11)

    def test_union_of_one_is_itself(self):
        """Test that a single grid is unchanged."""
        g = asm_to_simple_flow_grid(D3)
        assert union([g]) == g.as_elementary()

    def test_union_is_idempotent(self, edge_pair_grid):
        """Test that repeating inputs changes nothing."""
        grids = [asm_to_simple_flow_grid(a) for a in (D3, SWAP_23, D3)]
        assert union(grids) == edge_pair_grid

    def test_empty_and_mixed(self):
        """Test the structural checks of union."""
        with pytest.raises(StructuralInputError):
            union([])
        with pytest.raises(StructuralInputError):
            union([asm_to_simple_flow_grid(D3), asm_to_simple_flow_grid(enumerate_asms(2)[0])])

    def test_contains_and_admits(self, edge_pair_grid):
        """Test which simple grids a face grid admits."""
        assert edge_pair_grid.admits(asm_to_simple_flow_grid(D3)) is True
        assert edge_pair_grid.admits(asm_to_simple_flow_grid(SWAP_23)) is True
        assert edge_pair_grid.admits(asm_to_simple_flow_grid(IDENTITY_3)) is False
        assert edge_pair_grid.contains(edge_pair_grid) is True

    def test_from_values(self, edge_pair_grid):
        """Test construction from prefix values."""
        assert ElementaryFlowGrid.from_values(3, edge_pair_grid.values()) == edge_pair_grid


class TestGridEncoding:
    """Test cases for the binary and JSON forms."""

    def test_binary_round_trip(self, edge_pair_grid):
        """Test decode of encode, with n in the leading byte."""
        data = edge_pair_grid.encode()
        assert data[0] == 3
        assert len(data) == 1 + 3
        assert ElementaryFlowGrid.decode(data) == edge_pair_grid

    def test_json_letters(self, edge_pair_grid):
        """Test the F/B/D letter layout."""
        data = edge_pair_grid.to_json()
        assert data["horizontal"] == [["D", "F"], ["D", "B"], ["B", "F"]]
        assert data["vertical"] == [["D", "D", "B"], ["F", "B", "F"]]
        assert ElementaryFlowGrid.from_json(data) == edge_pair_grid

    def test_json_unknown_letter(self):
        """Test that an unknown state letter is rejected."""
        data = {"n": 2, "horizontal": [["X"], ["F"]], "vertical": [["F", "B"]]}
        with pytest.raises(InvalidFlowGridError):
            ElementaryFlowGrid.from_json(data)

    def test_json_bad_shape(self):
        """Test that wrong row lengths are structural errors."""
        data = {"n": 2, "horizontal": [["F", "F"], ["F"]], "vertical": [["F", "B"]]}
        with pytest.raises(StructuralInputError):
            ElementaryFlowGrid.from_json(data)
        with pytest.raises(StructuralInputError):
            ElementaryFlowGrid.from_json({"horizontal": []})

    def test_decode_empty(self):
        """Test that an empty encoding is rejected."""
        with pytest.raises(StructuralInputError):
            ElementaryFlowGrid.decode(b"")


class TestDoublyGraph:
    """Test cases for doubly directed graphs and regions."""

    def test_single_cycle(self, edge_pair_grid):
        """Test the graph, regions and degrees of a square cycle."""
        g = doubly_directed_graph(edge_pair_grid)
        assert g.vertices == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert doubly_directed_regions(g) == 1
        assert tuple(degree_profile(g)) == (4, 0, 0)
        assert bridges(g) == []

    def test_empty_graph(self):
        """Test a simple grid has no regions."""
        g = doubly_directed_graph(asm_to_simple_flow_grid(D3).as_elementary())
        assert g.is_empty() is True
        assert doubly_directed_regions(g) == 0

    def test_full_grid_regions(self):
        """Test that the all-doubly grid has (n-1)^2 regions."""
        g = doubly_directed_graph(ElementaryFlowGrid(4, bytes([DOUBLY] * 24)))
        assert doubly_directed_regions(g) == 9
        assert tuple(degree_profile(g)) == (4, 8, 4)

    def test_degree_one_is_invariant_violation(self):
        """Test that a dangling edge is reported."""
        g = DoublyDirectedGraph(3, frozenset([GridEdge(H, 1, 1)]))
        with pytest.raises(InvariantViolationError):
            degree_profile(g)

    def test_bridge_between_cycles(self):
        """Test that an edge joining two cycles is a bridge."""
        left = [GridEdge(H, 1, 1), GridEdge(H, 2, 1), GridEdge(V, 1, 1), GridEdge(V, 1, 2)]
        right = [GridEdge(H, 1, 3), GridEdge(H, 2, 3), GridEdge(V, 1, 3), GridEdge(V, 1, 4)]
        link = GridEdge(H, 1, 2)
        g = DoublyDirectedGraph(4, frozenset(left + right + [link]))
        assert bridges(g) == [link]
        assert doubly_directed_regions(g) == 2

    def test_bounded_regions(self):
        """Test the cell flood and its boundary."""
        regions = bounded_regions(3, CELL_11)
        assert regions == [frozenset({(1, 1)})]
        assert region_boundary(regions[0]) == frozenset(CELL_11)
        assert bounded_regions(3, []) == []
        assert bounded_regions(1, []) == []

    def test_region_cells(self, edge_pair_grid):
        """Test that region cells match the region count."""
        g = doubly_directed_graph(edge_pair_grid)
        assert region_cells(g) == [frozenset({(1, 1)})]
        assert len(region_cells(g)) == doubly_directed_regions(g)

    def test_two_cell_region(self):
        """Test a region made of two cells."""
        walls = [
            GridEdge(H, 1, 1),
            GridEdge(H, 1, 2),
            GridEdge(H, 2, 1),
            GridEdge(H, 2, 2),
            GridEdge(V, 1, 1),
            GridEdge(V, 1, 3),
        ]
        assert bounded_regions(3, walls) == [frozenset({(1, 1), (1, 2)})]

    def test_order_cycle(self):
        """Test walking order from the smallest vertex."""
        assert order_cycle(CELL_11) == [(1, 1), (1, 2), (2, 2), (2, 1)]

    def test_order_cycle_rejects_non_cycles(self):
        """Test paths and disjoint cycles are rejected."""
        with pytest.raises(DomainError):
            order_cycle(CELL_11[:3])
        with pytest.raises(DomainError):
            order_cycle(CELL_11 + [GridEdge(H, 1, 2)])
        far = [GridEdge(H, 3, 3), GridEdge(H, 4, 3), GridEdge(V, 3, 3), GridEdge(V, 3, 4)]
        with pytest.raises(DomainError):
            order_cycle(CELL_11 + far)


# Entry values at which each side of a vertex (up, down, left, right) points into it.
ENTERING_VALUE = (1, 0, 1, 0)


def _pair_vertices(n):
    """Degree, the two entries, the doubly sides and the entering sides at every vertex."""
    terms = vertex_terms(n)
    asms = list(enumerate_asms(n))
    for a, b in product(asms, asms):
        grid_a = asm_to_simple_flow_grid(a)
        codes = union([grid_a, asm_to_simple_flow_grid(b)]).codes
        for (i, j), sides in terms.items():
            doubly = [
                k
                for k, (index, _) in enumerate(sides)
                if index is not None and codes[index] == DOUBLY
            ]
            entering = [
                k
                for k, (index, constant) in enumerate(sides)
                if (constant if index is None else grid_a.value(index)) == ENTERING_VALUE[k]
            ]
            yield len(doubly), a.rows[i - 1][j - 1], b.rows[i - 1][j - 1], doubly, entering


class TestPairUnions:
    """Test cases for local degrees in the union of two simple flow grids."""

    @pytest.mark.parametrize("n", [3, 4])
    def test_degrees_are_even(self, n):
        """Test that every vertex of a two-vertex union has degree 0, 2 or 4."""
        assert {degree for degree, *_ in _pair_vertices(n)} <= {0, 2, 4}

    @pytest.mark.parametrize("n", [3, 4])
    def test_degree_four(self, n):
        """Test opposite nonzero entries give degree 4, and degree 4 needs them or two zeros."""
        for degree, a, b, _, _ in _pair_vertices(n):
            if a * b == -1:
                assert degree == 4
            if degree == 4:
                assert a * b == -1 or a == b == 0

    @pytest.mark.parametrize("n", [3, 4])
    def test_degree_two_collinear(self, n):
        """Test a straight pass has zero entries and one fixed edge in, one out."""
        for degree, a, b, doubly, entering in _pair_vertices(n):
            if degree == 2 and doubly in ([0, 1], [2, 3]):
                fixed = [k for k in range(4) if k not in doubly]
                assert a == b == 0
                assert sum(k in entering for k in fixed) == 1

    @pytest.mark.parametrize("n", [3, 4])
    def test_degree_two_turn(self, n):
        """Test a turn has exactly one nonzero entry and both fixed edges pointing the same way."""
        turns = 0
        for degree, a, b, doubly, entering in _pair_vertices(n):
            if degree == 2 and doubly not in ([0, 1], [2, 3]):
                turns += 1
                fixed = [k for k in range(4) if k not in doubly]
                assert (a == 0) != (b == 0)
                assert sum(k in entering for k in fixed) in (0, 2)
        assert turns > 0


class TestRender:
    """Test cases for text and DOT rendering."""

    def test_text_grid_of_d3(self):
        """Test the arrow glyphs of a simple grid."""
        text = render_text_grid(asm_to_simple_flow_grid(D3))
        assert text.splitlines() == [
            "o < o > o",
            "^   v   ^",
            "o > o < o",
            "v   ^   v",
            "o < o > o",
        ]

    def test_text_grid_doubly(self, edge_pair_grid):
        """Test doubly glyphs."""
        first = render_text_grid(edge_pair_grid).splitlines()[0]
        assert first == "o = o > o"

    def test_grid_dot(self, edge_pair_grid):
        """Test that doubly edges are drawn both ways in red."""
        dot = grid_to_dot(edge_pair_grid)
        assert dot.startswith("digraph flowgrid {")
        assert dot.count("dir=both, color=red") == 4
        assert dot.count("->") == 12

    def test_doubly_dot(self, edge_pair_grid):
        """Test the undirected doubly graph export."""
        dot = doubly_graph_to_dot(doubly_directed_graph(edge_pair_grid))
        assert dot.startswith("graph doubly {")
        assert dot.count(" -- ") == 4
