"""Direct (tensor) products of graphs and their component structure."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .graph_core import Graph, GraphError, build_graph

__all__ = ["ProductIndex", "direct_product", "predict_component_count", "swap_coordinates"]


@dataclass(frozen=True)
class ProductIndex:
    """Vertex ``(i, j)`` of ``G1 x G2`` has id ``i * n2 + j``."""

    n1: int
    n2: int

    def forward(self, i: int, j: int) -> int:
        if not (0 <= i < self.n1 and 0 <= j < self.n2):
            raise GraphError(f"pair ({i}, {j}) outside {self.n1} x {self.n2}")
        return i * self.n2 + j

    def backward(self, vid: int) -> tuple[int, int]:
        if not 0 <= vid < self.n1 * self.n2:
            raise GraphError(f"product vertex {vid} out of range")
        return divmod(vid, self.n2)

    def pi1(self, vid: int) -> int:
        return vid // self.n2

    def pi2(self, vid: int) -> int:
        return vid % self.n2

    def to_json(self) -> dict:
        return {"n1": self.n1, "n2": self.n2}


def direct_product(G1: Graph, G2: Graph) -> tuple[Graph, ProductIndex]:
    if G1.n == 0 or G2.n == 0:
        raise GraphError("direct product needs non-empty factors")
    idx = ProductIndex(G1.n, G2.n)
    e2 = G2.edges()
    edges = []
    for u1, u2 in G1.edges():
        for v1, v2 in e2:
            edges.append((idx.forward(u1, v1), idx.forward(u2, v2)))
            edges.append((idx.forward(u1, v2), idx.forward(u2, v1)))
    labels = [f"({G1.label(i)},{G2.label(j)})" for i in range(G1.n) for j in range(G2.n)]
    return build_graph(edges, G1.n * G2.n, labels), idx


def swap_coordinates(P: Graph, idx: ProductIndex) -> Graph:
    """Relabel ``G1 x G2`` as ``G2 x G1`` via ``(i, j) -> (j, i)``."""
    swapped = ProductIndex(idx.n2, idx.n1)

    def relabel(v: int) -> int:
        i, j = idx.backward(v)
        return swapped.forward(j, i)

    return build_graph([(relabel(u), relabel(v)) for u, v in P.edges()], P.n)


def predict_component_count(bipartite_flags: Sequence[bool]) -> int:
    """Components of a product of connected non-trivial factors: ``2**(max(k,1)-1)``."""
    k = sum(bool(f) for f in bipartite_flags)
    return 2 ** (max(k, 1) - 1)
