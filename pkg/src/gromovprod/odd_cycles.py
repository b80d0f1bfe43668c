"""Odd girth, shortcuts and reductions of odd cycles, and minimal cycles.

A cycle is given as its cyclic vertex sequence (first vertex not repeated).
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .graph_core import (
    INF,
    UNIT,
    Graph,
    GraphError,
    components,
    diam_continuous,
    hop_matrix,
    induced_subgraph,
)
from .hyperbolicity import enumerate_geodesics
from .parity_metric import parity_distances

__all__ = [
    "BadCycle",
    "EvenCycle",
    "Reduction",
    "CycleCertificate",
    "odd_girth",
    "check_cycle",
    "is_isometric_cycle",
    "find_shortcut",
    "reduce_cycle",
    "reduce_to_minimal",
    "minimal_cycles",
    "default_lmax",
    "dist_to_minimal_cycles",
    "canonical_cycle",
    "certify",
]


class BadCycle(GraphError):
    pass


class EvenCycle(GraphError):
    pass


@dataclass(frozen=True)
class Reduction:
    shortcut: tuple[int, ...]  # path u .. v, meets the cycle only at its ends
    arc: tuple[int, ...]  # retained subarc of the cycle, v .. u
    cycle: tuple[int, ...]  # the reduced odd cycle

    @property
    def length(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class CycleCertificate:
    vertices: tuple[int, ...]
    length: int
    odd: bool
    isometric: bool
    reduction: Reduction | None

    @property
    def minimal(self) -> bool:
        return self.odd and self.reduction is None

    def to_json(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "length": self.length,
            "odd": self.odd,
            "isometric": self.isometric,
            "minimal": self.minimal,
        }
        if self.reduction:
            out["reduction"] = {
                "shortcut": list(self.reduction.shortcut),
                "arc": list(self.reduction.arc),
                "cycle": list(self.reduction.cycle),
            }
        return out


def odd_girth(G: Graph) -> float:
    """Length of a shortest odd cycle, ``INF`` for bipartite graphs."""
    # a shortest odd closed walk is always a cycle
    return min((parity_distances(G, v).odd[v] for v in range(G.n)), default=INF)


def check_cycle(G: Graph, C: Sequence[int]) -> tuple[int, ...]:
    C = tuple(C)
    if len(C) < 3 or len(set(C)) != len(C):
        raise BadCycle(f"{C} is not a cycle")
    for u, v in zip(C, C[1:] + C[:1]):
        if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            raise BadCycle(f"({u}, {v}) is not an edge")
    return C


def canonical_cycle(C: Sequence[int]) -> tuple[int, ...]:
    """Rotation/reflection representative starting at the smallest vertex."""
    C = list(C)
    i = C.index(min(C))
    fwd = C[i:] + C[:i]
    bwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, bwd))


def is_isometric_cycle(G: Graph, C: Sequence[int], D: np.ndarray | None = None) -> bool:
    C = check_cycle(G, C)
    if D is None:
        D = hop_matrix(G)
    L = len(C)
    for i in range(L):
        for j in range(i + 1, L):
            if D[C[i], C[j]] != min(j - i, L - j + i):
                return False
    return True


def _avoiding_bfs(G: Graph, src: int, blocked: set[int]) -> tuple[list[int], list[int]]:
    """BFS from ``src`` whose paths may end at, but not pass through, ``blocked``."""
    dist = [-1] * G.n
    parent = [-1] * G.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u != src and u in blocked:
            continue
        for w in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def find_shortcut(G: Graph, C: Sequence[int]) -> tuple[int, ...] | None:
    """Shortest shortcut path of ``C`` (ties: lexicographically smallest), or None.

    Only paths are searched: removing a closed sub-walk never lengthens a
    walk, so a shortest shortcut walk can always be taken to be a path.
    """
    C = check_cycle(G, C)
    L = len(C)
    blocked = set(C)
    best: tuple[int, tuple[int, ...]] | None = None
    for i, u in enumerate(C):
        dist, parent = _avoiding_bfs(G, u, blocked)
        for j, v in enumerate(C):
            if j == i or dist[v] < 0:
                continue
            arc = min(abs(i - j), L - abs(i - j))
            if dist[v] >= arc:
                continue
            path = [v]
            while path[-1] != u:
                path.append(parent[path[-1]])
            cand = (dist[v], tuple(path[::-1]))
            if best is None or cand < best:
                best = cand
    return None if best is None else best[1]


def reduce_cycle(G: Graph, C: Sequence[int]) -> Reduction | None:
    """Reduction along the shortest shortcut, or None when ``C`` is minimal."""
    C = check_cycle(G, C)
    if len(C) % 2 == 0:
        raise EvenCycle(f"cycle of length {len(C)} is even")
    g = find_shortcut(G, C)
    if g is None:
        return None
    L = len(C)
    i, j = C.index(g[0]), C.index(g[-1])
    # the two arcs from v = g[-1] back to u = g[0]
    arc_a = tuple(C[(j + t) % L] for t in range((i - j) % L + 1))
    arc_b = tuple(C[(j - t) % L] for t in range((j - i) % L + 1))
    glen = len(g) - 1
    # keep the arc whose length has the parity making the new cycle odd
    arc = arc_a if (glen + len(arc_a) - 1) % 2 else arc_b
    cycle = g[:-1] + arc[:-1]
    return Reduction(g, arc, cycle)


def reduce_to_minimal(G: Graph, C: Sequence[int]) -> list[tuple[int, ...]]:
    """Iterate reductions; returns the chain ending in a minimal cycle."""
    chain = [check_cycle(G, C)]
    while True:
        red = reduce_cycle(G, chain[-1])
        if red is None:
            return chain
        chain.append(red.cycle)


def certify(G: Graph, C: Sequence[int], D: np.ndarray | None = None) -> CycleCertificate:
    C = check_cycle(G, C)
    odd = len(C) % 2 == 1
    red = reduce_cycle(G, C) if odd else None
    return CycleCertificate(C, len(C), odd, is_isometric_cycle(G, C, D), red)


def default_lmax(G: Graph) -> int:
    """Upper bound for minimal cycle lengths: ``4 * delta <= 2 * diam``."""
    best = 3
    for comp in components(G):
        Gc, _ = induced_subgraph(G, comp)
        d = diam_continuous(Gc)
        best = max(best, math.ceil(2 * d / UNIT))
    return best if best % 2 else best + 1


def minimal_cycles(G: Graph, lmax: int | None = None, cap: int = 10_000) -> list[CycleCertificate]:
    """All isometric odd cycles of length at most ``lmax``.

    Every isometric cycle of length ``2k+1`` is two geodesics of length ``k``
    from a vertex ``c`` to the ends of its antipodal edge, so enumerating
    those geodesic pairs is complete.
    """
    if lmax is None:
        lmax = default_lmax(G)
    D = hop_matrix(G)
    found: set[tuple[int, ...]] = set()
    edges = G.edges()
    cache: dict[tuple[int, int], list[list[int]]] = {}

    def geos(u: int, v: int) -> list[list[int]]:
        if (u, v) not in cache:
            cache[(u, v)] = enumerate_geodesics(G, u, v, cap)
        return cache[(u, v)]

    for c in range(G.n):
        for a, b in edges:
            k = D[c, a]
            if k <= 0 or D[c, b] != k or 2 * k + 1 > lmax:
                continue
            left = geos(c, a)
            right = geos(c, b)
            for p in left:
                inner = set(p[1:])
                for q in right:
                    if inner.isdisjoint(q[1:]):
                        cyc = canonical_cycle(p + q[1:][::-1])
                        if cyc not in found and is_isometric_cycle(G, cyc, D):
                            found.add(cyc)
    certs = [CycleCertificate(c, len(c), True, True, None) for c in found]
    certs.sort(key=lambda z: (z.length, z.vertices))
    return certs


def dist_to_minimal_cycles(
    G: Graph, lmax: int | None = None, cycles: Sequence[CycleCertificate] | None = None
) -> list[float]:
    """Per-vertex distance (sixteenths) to the union of minimal cycles."""
    if cycles is None:
        cycles = minimal_cycles(G, lmax)
    sources = sorted({v for c in cycles for v in c.vertices})
    dist = [-1] * G.n
    queue = deque(sources)
    for s in sources:
        dist[s] = 0
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return [INF if d < 0 else d * UNIT for d in dist]
