"""Flow grids of alternating sign matrices and their doubly directed graphs."""

from .doubly import (
    DegreeProfile,
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
from .grid import (
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
)
from .render import doubly_graph_to_dot, grid_to_dot, render_text_grid

__all__ = [
    "DegreeProfile",
    "DoublyDirectedGraph",
    "bounded_regions",
    "bridges",
    "degree_profile",
    "doubly_directed_graph",
    "doubly_directed_regions",
    "order_cycle",
    "region_boundary",
    "region_cells",
    "EdgeKind",
    "EdgeState",
    "ElementaryFlowGrid",
    "GridEdge",
    "SimpleFlowGrid",
    "all_edges",
    "asm_to_simple_flow_grid",
    "edge_count",
    "edge_index",
    "simple_flow_grid_to_asm",
    "union",
    "doubly_graph_to_dot",
    "grid_to_dot",
    "render_text_grid",
]
