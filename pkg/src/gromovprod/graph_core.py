"""Finite simple graphs viewed as geodesic metric spaces with unit edges.

All lengths are integers counted in sixteenths of an edge (``UNIT`` per
edge); :data:`INF` marks pairs in different components.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

UNIT = 16
INF = math.inf

__all__ = [
    "UNIT",
    "INF",
    "GraphError",
    "LoopEdge",
    "DuplicateEdge",
    "BadId",
    "Graph",
    "Point",
    "build_graph",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "parse_edge_list",
    "bfs_hops",
    "hop_matrix",
    "apsp",
    "subdivide",
    "diam_vertices",
    "diam_continuous",
    "is_bipartite",
    "components",
    "induced_subgraph",
    "point_distance",
    "to_fraction",
]


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadId(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        # adjacency rows are sorted
        lo, hi = 0, len(nbrs)
        while lo < hi:
            mid = (lo + hi) // 2
            if nbrs[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(nbrs) and nbrs[lo] == v

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


def build_graph(
    edges: Iterable[Sequence[int]], n: int | None = None, labels: Sequence[str] | None = None
) -> Graph:
    edges = [tuple(e) for e in edges]
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise BadId(f"edge ({u}, {v}) has an id outside [0, {n})")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if v in adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        adj[u].add(v)
        adj[v].add(u)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise GraphError("labels must have one entry per vertex")
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), labels)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices``; returns it with the new->old id list."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    labels = [G.label(v) for v in keep] if G.labels else None
    return build_graph(edges, len(keep), labels), keep


# ---------------------------------------------------------------------------
# edge-list files


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: bad header {raw!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(edges, n)


def format_edge_list(G: Graph) -> str:
    lines = [f"n {G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(G: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(G), encoding="utf-8")


# ---------------------------------------------------------------------------
# shortest paths


def bfs_hops(G: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; -1 for unreachable vertices."""
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    adj = G.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def hop_matrix(G: Graph) -> np.ndarray:
    """All-pairs hop counts as an int64 array, -1 across components."""
    out = np.empty((G.n, G.n), dtype=np.int64)
    for s in range(G.n):
        out[s] = bfs_hops(G, s)
    return out


def apsp(G: Graph) -> np.ndarray:
    """All-pairs distances in sixteenths (float array, ``inf`` across components).

    Values are exact integers stored as floats so that ``inf`` can mark
    disconnection without a sentinel integer.
    """
    hops = hop_matrix(G).astype(float)
    hops[hops < 0] = np.inf
    return hops * UNIT


def to_fraction(d16: float | int) -> Fraction | float:
    """Convert a sixteenths length to an exact edge-length fraction."""
    if d16 == INF:
        return INF
    return Fraction(int(d16), UNIT)


# ---------------------------------------------------------------------------
# points on the metric graph


@dataclass(frozen=True, order=True)
class Point:
    """A vertex, or a point inside edge ``(a, b)`` at ``offset`` sixteenths from ``a``.

    Canonical form: vertices have ``a == b`` and ``offset == 0``; interior
    points have ``a < b`` and ``0 < offset < 16``.
    """

    a: int
    b: int
    offset: int

    @classmethod
    def vertex(cls, v: int) -> Point:
        return cls(v, v, 0)

    @classmethod
    def on_edge(cls, u: int, v: int, offset: int) -> Point:
        if not 0 <= offset <= UNIT:
            raise GraphError(f"offset {offset} outside [0, {UNIT}]")
        if offset == 0:
            return cls.vertex(u)
        if offset == UNIT:
            return cls.vertex(v)
        if u == v:
            raise GraphError("interior point needs two distinct endpoints")
        if u > v:
            u, v, offset = v, u, UNIT - offset
        return cls(u, v, offset)

    @classmethod
    def midpoint(cls, u: int, v: int) -> Point:
        return cls.on_edge(u, v, UNIT // 2)

    @property
    def is_vertex(self) -> bool:
        return self.offset == 0

    def check(self, G: Graph) -> None:
        if not (0 <= self.a < G.n and 0 <= self.b < G.n):
            raise BadId(f"{self} not in graph")
        if not self.is_vertex and not G.has_edge(self.a, self.b):
            raise GraphError(f"{self}: ({self.a}, {self.b}) is not an edge")

    def ends(self) -> tuple[tuple[int, int], ...]:
        """``(endpoint, sixteenths to it)`` pairs."""
        if self.is_vertex:
            return ((self.a, 0),)
        return ((self.a, self.offset), (self.b, UNIT - self.offset))

    def __str__(self) -> str:
        if self.is_vertex:
            return f"v{self.a}"
        return f"e({self.a},{self.b})+{self.offset}/16"


def point_distance(p: Point, q: Point, D16: np.ndarray) -> float:
    """Exact distance (sixteenths) between two points, given vertex apsp ``D16``."""
    best = INF
    for a, da in p.ends():
        for b, db in q.ends():
            best = min(best, da + D16[a, b] + db)
    if not p.is_vertex and not q.is_vertex and (p.a, p.b) == (q.a, q.b):
        best = min(best, abs(p.offset - q.offset))
    return best


# ---------------------------------------------------------------------------
# subdivision, diameters, components


def subdivide(G: Graph, k: int) -> tuple[Graph, list[Point]]:
    """Replace every edge by a path of ``k`` edges.

    Old vertices keep their ids; the ``k-1`` new vertices of the i-th edge
    ``(u, v)`` (in ``G.edges()`` order) follow, ordered from ``u`` to ``v``.
    The returned list maps every new vertex id to its :class:`Point` in ``G``.
    """
    if k not in (1, 2, 4, 8, 16):
        raise GraphError(f"subdivision factor must divide {UNIT}, got {k}")
    step = UNIT // k
    points = [Point.vertex(v) for v in range(G.n)]
    edges = []
    nxt = G.n
    for u, v in G.edges():
        prev = u
        for i in range(1, k):
            points.append(Point.on_edge(u, v, i * step))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return build_graph(edges, nxt), points


def diam_vertices(G: Graph) -> float:
    if G.n == 0:
        return 0
    hops = hop_matrix(G)
    if (hops < 0).any():
        return INF
    return int(hops.max()) * UNIT


def diam_continuous(G: Graph) -> float:
    """Diameter over all points, exact via the midpoint subdivision."""
    if G.n == 0:
        return 0
    H, _ = subdivide(G, 2)
    hops = hop_matrix(H)
    if (hops < 0).any():
        return INF
    return int(hops.max()) * (UNIT // 2)


def components(G: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_bipartite(G: Graph) -> tuple[list[int], list[int]] | None:
    """A 2-colouring ``(class0, class1)``, or None if some odd cycle exists.

    In each component the smallest vertex gets colour 0.
    """
    colour = [-1] * G.n
    for s in range(G.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return (
        [v for v in range(G.n) if colour[v] == 0],
        [v for v in range(G.n) if colour[v] == 1],
    )
