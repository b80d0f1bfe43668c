"""Exact Gromov hyperbolicity of finite graphs and their direct products."""

from .graph_core import INF, UNIT, Graph, Point, apsp, build_graph, read_edge_list, subdivide
from .hyperbolicity import Budget, DeltaResult, Triangle, delta_exact, delta_vertex, thin_constant
from .odd_cycles import minimal_cycles, odd_girth
from .parity_metric import pair_distance, parity_distances, product_distance
from .products import direct_product
from .qi_toolkit import QiReport, qi_constants

__all__ = [
    "INF",
    "UNIT",
    "Graph",
    "Point",
    "apsp",
    "build_graph",
    "read_edge_list",
    "subdivide",
    "Budget",
    "DeltaResult",
    "Triangle",
    "delta_exact",
    "delta_vertex",
    "thin_constant",
    "minimal_cycles",
    "odd_girth",
    "pair_distance",
    "parity_distances",
    "product_distance",
    "direct_product",
    "QiReport",
    "qi_constants",
]
