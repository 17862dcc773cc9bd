"""DOT and text-grid renderings of flow grids."""

from typing import List, Union

from .doubly import DoublyDirectedGraph
from .grid import EdgeKind, EdgeState, ElementaryFlowGrid, GridEdge, SimpleFlowGrid, all_edges

_HORIZONTAL_GLYPHS = {EdgeState.FORWARD: ">", EdgeState.BACKWARD: "<", EdgeState.DOUBLY: "="}
_VERTICAL_GLYPHS = {EdgeState.FORWARD: "v", EdgeState.BACKWARD: "^", EdgeState.DOUBLY: "‖"}


def _node(v) -> str:
    return f'"{v[0]},{v[1]}"'


def render_text_grid(grid: Union[ElementaryFlowGrid, SimpleFlowGrid]) -> str:
    """Render a grid with `<` `>` `^` `v` for fixed edges and `=` `‖` for doubly edges."""
    if isinstance(grid, SimpleFlowGrid):
        grid = grid.as_elementary()
    n = grid.n
    lines: List[str] = []
    for i in range(1, n + 1):
        parts = ["o"]
        for j in range(1, n):
            parts.append(_HORIZONTAL_GLYPHS[grid.state(GridEdge(EdgeKind.HORIZONTAL, i, j))])
            parts.append("o")
        lines.append(" ".join(parts))
        if i < n:
            edges = [GridEdge(EdgeKind.VERTICAL, i, j) for j in range(1, n + 1)]
            glyphs = [_VERTICAL_GLYPHS[grid.state(edge)] for edge in edges]
            lines.append("   ".join(glyphs))
    return "\n".join(lines) + "\n"


def grid_to_dot(grid: ElementaryFlowGrid, name: str = "flowgrid") -> str:
    """DOT digraph: fixed edges black along their direction, doubly edges red both ways."""
    n = grid.n
    lines = [f"digraph {name} {{", "  node [shape=point];"]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lines.append(f'  {_node((i, j))} [pos="{j},{n + 1 - i}!"];')
    for edge in all_edges(n):
        a, b = edge.endpoints
        state = grid.state(edge)
        if state == EdgeState.DOUBLY:
            lines.append(f"  {_node(a)} -> {_node(b)} [dir=both, color=red];")
        elif state == EdgeState.FORWARD:
            lines.append(f"  {_node(a)} -> {_node(b)};")
        else:
            lines.append(f"  {_node(b)} -> {_node(a)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def doubly_graph_to_dot(g: DoublyDirectedGraph, name: str = "doubly") -> str:
    """DOT graph of the doubly directed edges, drawn red."""
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for v in g.vertices:
        lines.append(f'  {_node(v)} [pos="{v[1]},{g.n + 1 - v[0]}!"];')
    for edge in sorted(g.edges):
        a, b = edge.endpoints
        lines.append(f"  {_node(a)} -- {_node(b)} [color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
