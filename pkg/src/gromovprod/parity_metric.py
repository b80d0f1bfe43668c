"""Shortest even/odd walks and the closed-form distance in a direct product.

Walk lengths here are plain edge counts; :data:`INF` means no walk of that
parity exists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import INF, Graph, GraphError, bfs_hops

__all__ = [
    "ParityRow",
    "BadCoordinate",
    "parity_distances",
    "parity_table",
    "product_distance",
    "pair_distance",
    "lower_bound_gap",
    "cmxpn_distance",
    "walk_of_length",
]


class BadCoordinate(GraphError):
    pass


@dataclass(frozen=True)
class ParityRow:
    """Shortest even and odd walk lengths from ``source`` to every vertex."""

    source: int
    even: tuple[float, ...]
    odd: tuple[float, ...]

    def entry(self, target: int) -> tuple[float, float]:
        return self.even[target], self.odd[target]


def parity_distances(G: Graph, source: int) -> ParityRow:
    # BFS on the double cover: state (v, parity of walk length so far)
    dist = [[-1, -1] for _ in range(G.n)]
    dist[source][0] = 0
    queue = deque([(source, 0)])
    while queue:
        u, par = queue.popleft()
        d = dist[u][par] + 1
        for w in G.adjacency[u]:
            if dist[w][1 - par] < 0:
                dist[w][1 - par] = d
                queue.append((w, 1 - par))
    even = tuple(INF if d[0] < 0 else d[0] for d in dist)
    odd = tuple(INF if d[1] < 0 else d[1] for d in dist)
    return ParityRow(source, even, odd)


def parity_table(G: Graph) -> list[ParityRow]:
    return [parity_distances(G, s) for s in range(G.n)]


def product_distance(e1: tuple[float, float], e2: tuple[float, float]) -> float:
    """``min(max(even1, even2), max(odd1, odd2))`` for ``(even, odd)`` factor entries."""
    return min(max(e1[0], e2[0]), max(e1[1], e2[1]))


def pair_distance(G1: Graph, G2: Graph, a: tuple[int, int], b: tuple[int, int]) -> float:
    """Distance between ``a = (u, v)`` and ``b = (u2, v2)`` in ``G1 x G2`` without building it.

    The parity formula pads walks with back-and-forth steps, which needs an
    edge at each endpoint; an isolated coordinate makes the vertex isolated.
    """
    if a == b:
        return 0
    (u, v), (u2, v2) = a, b
    if not (G1.adjacency[u] and G2.adjacency[v]):
        return INF
    return product_distance(parity_distances(G1, u).entry(u2), parity_distances(G2, v).entry(v2))


def lower_bound_gap(
    G1: Graph, G2: Graph, pair: tuple[tuple[int, int], tuple[int, int]]
) -> tuple[float, float]:
    """``(product distance, max of factor distances)`` for ``((u, v), (u2, v2))``."""
    (u, v), (u2, v2) = pair
    d1 = bfs_hops(G1, u)[u2]
    d2 = bfs_hops(G2, v)[v2]
    f1 = INF if d1 < 0 else d1
    f2 = INF if d2 < 0 else d2
    return pair_distance(G1, G2, (u, v), (u2, v2)), max(f1, f2)


def cmxpn_distance(m: int, n: int, a: tuple[int, int], b: tuple[int, int]) -> int:
    """Distance in ``C_m x P_n`` between ``(j, i)`` and ``(r, s)``, 1-based.

    ``j, r`` index the cycle and ``i, s`` the path; ``m`` must be odd.
    """
    if m < 3 or m % 2 == 0 or n < 2:
        raise BadCoordinate(f"need odd m >= 3 and n >= 2, got m={m}, n={n}")
    (j, i), (r, s) = a, b
    for c, top in ((j, m), (r, m), (i, n), (s, n)):
        if not 1 <= c <= top:
            raise BadCoordinate(f"coordinate {c} outside [1, {top}]")
    di, dj = abs(i - s), abs(j - r)
    if di % 2 == dj % 2:
        return max(di, dj)
    return max(di, m - dj)


def walk_of_length(G: Graph, u: int, v: int, length: int) -> list[int] | None:
    """Some ``u, v``-walk with exactly ``length`` edges, or None."""
    # reachable[k][w]: a w -> v walk of exactly k edges exists
    reachable = [[w == v for w in range(G.n)]]
    for _ in range(length):
        prev = reachable[-1]
        reachable.append([any(prev[x] for x in G.adjacency[w]) for w in range(G.n)])
    if not reachable[length][u]:
        return None
    walk = [u]
    for k in range(length, 0, -1):
        cur = walk[-1]
        walk.append(next(x for x in G.adjacency[cur] if reachable[k - 1][x]))
    return walk
