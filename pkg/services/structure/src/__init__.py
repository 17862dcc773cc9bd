"""Structure service: blocks, cycle matrices, symmetry and products of faces."""

from .blocks import TwoConnectedDecomposition, two_connected_components
from .cycles import (
    BasicRegion,
    CycleMatrix,
    basic_cycles,
    basic_regions,
    clockwise_cycle_matrix,
    corners,
    cycle_edges,
    cycle_sum_check,
    difference_cycle_matrix,
    edge_flow_grid_from_cycle,
    is_cycle_matrix,
    simple_cycles,
)
from .product import ProductDecomposition, factor_vertex, product_decomposition
from .symmetry import center, estranged_partner, has_even_degrees, is_centrally_symmetric

__all__ = [
    "TwoConnectedDecomposition",
    "two_connected_components",
    "BasicRegion",
    "CycleMatrix",
    "basic_cycles",
    "basic_regions",
    "clockwise_cycle_matrix",
    "corners",
    "cycle_edges",
    "cycle_sum_check",
    "difference_cycle_matrix",
    "edge_flow_grid_from_cycle",
    "is_cycle_matrix",
    "simple_cycles",
    "ProductDecomposition",
    "factor_vertex",
    "product_decomposition",
    "center",
    "estranged_partner",
    "has_even_degrees",
    "is_centrally_symmetric",
]
