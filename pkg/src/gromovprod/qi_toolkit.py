"""Quasi-isometry measurements and the explicit constructions built on them.

Constants are exact :class:`~fractions.Fraction` values in edge units.
A map ``f`` between vertex sets is a sequence with ``f[x]`` the image of ``x``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph_core import (
    INF,
    UNIT,
    Graph,
    GraphError,
    Point,
    bfs_hops,
    build_graph,
    components,
    diam_vertices,
    hop_matrix,
    induced_subgraph,
    is_bipartite,
    subdivide,
)
from .odd_cycles import dist_to_minimal_cycles, minimal_cycles, odd_girth
from .parity_metric import parity_distances
from .products import ProductIndex, direct_product

__all__ = [
    "QiReport",
    "NotAWalk",
    "NoOddCycle",
    "OverlappingBalls",
    "UncoveredOddCycle",
    "NotMRegular",
    "BallSpec",
    "qi_constants",
    "qi_from_matrices",
    "extend_vertex_map",
    "measure_extension",
    "lift_gamma",
    "swap_layers",
    "DcCheck",
    "check_lemma_dc",
    "check_balls",
    "collapse_balls",
    "MRegularity",
    "is_M_regular",
    "product_star",
    "g2odd_embedding",
    "no_odd_embedding",
    "lp2_inclusion",
    "dense_embedding",
]


class NotAWalk(GraphError):
    pass


class NoOddCycle(GraphError):
    pass


class OverlappingBalls(GraphError):
    pass


class UncoveredOddCycle(GraphError):
    pass


class NotMRegular(GraphError):
    pass


# ---------------------------------------------------------------------------
# measuring quasi-isometry constants


@dataclass(frozen=True)
class QiReport:
    """Least constants of a map, measured over every pair of domain points.

    ``alpha``/``beta`` is the point with ``alpha = 1``; ``min_alpha`` is the
    least ``alpha`` that works with ``beta = 0`` (``INF`` if none does).
    ``pareto`` lists the non-dominated ``(alpha, beta)`` corners in between.
    """

    alpha: Fraction
    beta: Fraction | float
    epsilon: Fraction | float
    embedding_ok: bool
    min_alpha: Fraction | float
    pareto: tuple[tuple[Fraction, Fraction], ...]
    pairs: tuple[tuple[Fraction, Fraction], ...] = field(repr=False, compare=False)

    def beta_at(self, alpha: Fraction | int) -> Fraction | float:
        """Least additive constant that works with multiplicative constant ``alpha``."""
        if not self.embedding_ok:
            return INF
        alpha = Fraction(alpha)
        best = Fraction(0)
        for dx, dy in self.pairs:
            best = max(best, dx / alpha - dy, dy - alpha * dx)
        return best

    def to_json(self) -> dict:
        return {
            "alpha": _num(self.alpha),
            "beta": _num(self.beta),
            "epsilon": _num(self.epsilon),
            "embedding_ok": self.embedding_ok,
            "min_alpha": _num(self.min_alpha),
            "pareto": [[_num(a), _num(b)] for a, b in self.pareto],
        }


def _num(x) -> dict | None:
    if x == INF:
        return None
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def qi_from_matrices(
    DX: np.ndarray, DY: np.ndarray, f: Sequence[int], sx: int = 1, sy: int = 1,
    codomain: Sequence[int] | None = None,
) -> QiReport:
    """QI constants of ``f`` from hop-count matrices (``-1`` = unreachable).

    Distances are ``DX / sx`` and ``DY / sy``.  Fullness is measured over
    ``codomain`` rows of ``DY`` (all rows by default).
    """
    f = np.asarray(f)
    img = DY[np.ix_(f, f)]
    n = len(f)
    iu = np.triu_indices(n, 1)
    dx, dy = DX[iu], img[iu]
    ok = not np.any((dx < 0) != (dy < 0))
    both = (dx >= 0) & (dy >= 0)
    uniq = np.unique(np.stack([dx[both], dy[both]], axis=1), axis=0) if both.any() else np.empty((0, 2))
    pairs = tuple((Fraction(int(a), sx), Fraction(int(b), sy)) for a, b in uniq)
    rows = np.arange(DY.shape[0]) if codomain is None else np.asarray(codomain)
    to_img = DY[np.ix_(rows, np.unique(f))].astype(float)
    to_img[to_img < 0] = np.inf
    far = to_img.min(axis=1).max() if len(rows) else 0
    eps = INF if far == np.inf else Fraction(int(far), sy)
    if not ok:
        return QiReport(Fraction(1), INF, eps, False, INF, (), pairs)
    # beta = 0 requires dy >= dx / a and dy <= a dx for every pair
    min_alpha: Fraction | float = Fraction(1)
    for a, b in pairs:
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            min_alpha = INF
            break
        min_alpha = max(min_alpha, a / b, b / a)
    report = QiReport(Fraction(1), Fraction(0), eps, True, min_alpha, (), pairs)
    beta1 = report.beta_at(1)
    cands = {Fraction(1)}
    for a, b in pairs:
        if a and b:
            for r in (a / b, b / a):
                if r >= 1 and (min_alpha == INF or r <= min_alpha):
                    cands.add(r)
    frontier = []
    for a in sorted(cands):
        b = report.beta_at(a)
        if not frontier or b < frontier[-1][1]:
            frontier.append((a, b))
    return QiReport(Fraction(1), beta1, eps, True, min_alpha, tuple(frontier), pairs)


def qi_constants(G1: Graph, G2: Graph, f: Sequence[int]) -> QiReport:
    if len(f) != G1.n:
        raise GraphError("map must be total on V(G1)")
    return qi_from_matrices(hop_matrix(G1), hop_matrix(G2), f)


# ---------------------------------------------------------------------------
# extending a vertex map to the whole metric graph


def extend_vertex_map(G1: Graph, G2: Graph, f: Sequence[int]):
    """Point map sending each point to the image of its nearest vertex.

    Midpoints go to the lower-id endpoint.
    """
    def g(p: Point) -> int:
        if p.is_vertex:
            return f[p.a]
        return f[p.a] if p.offset <= UNIT // 2 else f[p.b]

    return g


def measure_extension(G1: Graph, G2: Graph, f: Sequence[int]) -> QiReport:
    """Constants of the extension, measured on vertices and midpoints of both graphs."""
    g = extend_vertex_map(G1, G2, f)
    H1, pts1 = subdivide(G1, 2)
    H2, pts2 = subdivide(G2, 2)
    image = [g(p) for p in pts1]  # vertex ids of G2 == their ids in H2
    return qi_from_matrices(hop_matrix(H1), hop_matrix(H2), image, sx=2, sy=2)


# ---------------------------------------------------------------------------
# lifts into G1 x P2


def _check_walk(G: Graph, walk: Sequence[int]) -> None:
    if not walk:
        raise NotAWalk("empty walk")
    for u, v in zip(walk, walk[1:]):
        if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            raise NotAWalk(f"({u}, {v}) is not an edge")


def lift_gamma(G1: Graph, walk: Sequence[int], variant: int = 1) -> list[tuple[int, int]]:
    """Alternating lift of a walk to ``G1 x P2``; layer 0 is ``v1``, layer 1 is ``v2``.

    Variant 1 starts on ``v1``; variant 2 is its image under the layer swap.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    _check_walk(G1, walk)
    start = 0 if variant == 1 else 1
    return [(w, (start + j) % 2) for j, w in enumerate(walk)]


def swap_layers(vertices: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(w, 1 - i) for w, i in vertices]


# ---------------------------------------------------------------------------
# distance to the minimal cycles versus the lifted endpoints


@dataclass(frozen=True)
class DcCheck:
    k: int
    j: int
    lhs: int  # distance between the two lifted endpoints in G1 x P2
    dist_to_cycles: int
    delta: Fraction
    upper: Fraction

    @property
    def rhs(self) -> float:
        return math.sqrt(self.dist_to_cycles)

    @property
    def strict(self) -> bool:
        return self.lhs * self.lhs > self.dist_to_cycles

    @property
    def lower_ok(self) -> bool:
        t = 2 * self.lhs - self.k
        return t >= 0 and t * t >= self.dist_to_cycles

    @property
    def upper_ok(self) -> bool:
        return self.lhs <= self.upper

    @property
    def holds(self) -> bool:
        return self.strict and self.lower_ok and self.upper_ok and self.lhs >= self.k


def check_lemma_dc(
    G1: Graph,
    geodesic: Sequence[int],
    j: int,
    delta: Fraction | None = None,
    dist_to_cycles: Sequence[float] | None = None,
) -> DcCheck:
    _check_walk(G1, geodesic)
    k = len(geodesic) - 1
    w0, wk = geodesic[0], geodesic[-1]
    if bfs_hops(G1, w0)[wk] != k:
        raise NotAWalk("walk is not a geodesic")
    if not 0 <= j <= k:
        raise ValueError(f"index {j} outside [0, {k}]")
    row = parity_distances(G1, w0)
    # w_k' sits on the layer whose walks from w_0' have parity opposite to k
    lhs = row.odd[wk] if k % 2 == 0 else row.even[wk]
    if lhs == INF:
        raise NoOddCycle("no odd cycle reachable from the geodesic")
    if dist_to_cycles is None:
        dist_to_cycles = dist_to_minimal_cycles(G1)
    dj = dist_to_cycles[geodesic[j]]
    if dj == INF:
        raise NoOddCycle("graph has no odd cycle")
    dj = int(dj) // UNIT
    if delta is None:
        from .hyperbolicity import delta_exact

        delta = delta_exact(G1).fraction
    upper = k + 2 * dj + 4 * Fraction(delta)
    return DcCheck(k, j, int(lhs), dj, Fraction(delta), upper)


# ---------------------------------------------------------------------------
# collapsing balls


@dataclass(frozen=True)
class BallSpec:
    center: int
    radius: int

    def open_ball(self, dist: Sequence[int]) -> list[int]:
        return [v for v, d in enumerate(dist) if 0 <= d < self.radius]

    def sphere(self, dist: Sequence[int]) -> list[int]:
        return [v for v, d in enumerate(dist) if d == self.radius]

    def closed_ball(self, dist: Sequence[int]) -> list[int]:
        return [v for v, d in enumerate(dist) if 0 <= d <= self.radius]


def check_balls(G1: Graph, balls: Sequence[BallSpec]) -> list[list[int]]:
    """Validate a ball family; returns the distance rows from each centre."""
    rows = []
    for b in balls:
        if not 0 <= b.center < G1.n or b.radius < 1:
            raise GraphError(f"bad ball {b}")
        rows.append(bfs_hops(G1, b.center))
    for i in range(len(balls)):
        ci = set(balls[i].closed_ball(rows[i]))
        for j in range(i + 1, len(balls)):
            if ci & set(balls[j].closed_ball(rows[j])):
                raise OverlappingBalls(f"closed balls {balls[i]} and {balls[j]} meet")
    inside = {v for b, r in zip(balls, rows) for v in b.open_ball(r)}
    rest, _ = induced_subgraph(G1, [v for v in range(G1.n) if v not in inside])
    # G1' bipartite  <=>  every odd cycle meets an open ball
    if is_bipartite(rest) is None:
        raise UncoveredOddCycle("some odd cycle avoids every ball")
    return rows


@dataclass(frozen=True)
class Collapse:
    graph: Graph
    f: tuple[int, ...]
    stars: tuple[int, ...]
    kept: tuple[int, ...]  # G1 ids of the surviving vertices, in new-id order
    K: int


def collapse_balls(G1: Graph, balls: Sequence[BallSpec]) -> Collapse:
    rows = check_balls(G1, balls)
    owner = {}
    for j, (b, r) in enumerate(zip(balls, rows)):
        for v in b.open_ball(r):
            owner[v] = j
    kept = [v for v in range(G1.n) if v not in owner]
    new = {v: i for i, v in enumerate(kept)}
    stars = [len(kept) + j for j in range(len(balls))]
    edges = [(new[u], new[v]) for u, v in G1.edges() if u in new and v in new]
    for j, (b, r) in enumerate(zip(balls, rows)):
        edges.extend((new[w], stars[j]) for w in b.sphere(r))
    graph = build_graph(edges, len(kept) + len(balls))
    f = tuple(new[v] if v in new else stars[owner[v]] for v in range(G1.n))
    K = max((b.radius for b in balls), default=0)
    return Collapse(graph, f, tuple(stars), tuple(kept), K)


@dataclass(frozen=True)
class MRegularity:
    ok: bool
    witnesses: tuple[tuple[int, ...] | None, ...]
    reason: str = ""


def _short_odd_cycle_through(G: Graph, v: int, max_len: int, back: list[int]) -> tuple[int, ...] | None:
    """Some odd cycle through ``v`` of length at most ``max_len`` (DFS)."""
    path = [v]
    on_path = {v}

    def dfs(u: int) -> tuple[int, ...] | None:
        L = len(path)
        for w in G.adjacency[u]:
            if w == v and L >= 3 and L % 2 == 1:
                return tuple(path)
            if w in on_path or back[w] < 0 or L + back[w] > max_len:
                continue
            path.append(w)
            on_path.add(w)
            got = dfs(w)
            if got:
                return got
            path.pop()
            on_path.discard(w)
        return None

    return dfs(v)


def is_M_regular(G1: Graph, balls: Sequence[BallSpec], M: float) -> MRegularity:
    """Does every ball meet an odd cycle of length strictly below ``M``?"""
    rows = [bfs_hops(G1, b.center) for b in balls]
    limit = G1.n if M == INF else min(G1.n, math.ceil(M) - 1)
    wits = []
    for b, r in zip(balls, rows):
        found = None
        for v in sorted(b.open_ball(r)):
            found = _short_odd_cycle_through(G1, v, limit, bfs_hops(G1, v))
            if found:
                break
        wits.append(found)
    missing = [str(b) for b, w in zip(balls, wits) if w is None]
    if not balls:
        return MRegularity(False, (), "empty ball family")
    if missing:
        return MRegularity(False, tuple(wits), "no short odd cycle meets " + ", ".join(missing))
    return MRegularity(True, tuple(wits))


@dataclass(frozen=True)
class StarProduct:
    graph: Graph
    F: tuple[int, ...]  # indexed by G1 x P2 vertex ids
    product: Graph
    index: ProductIndex
    K: int
    M: float


def product_star(G1: Graph, balls: Sequence[BallSpec], M: float) -> StarProduct:
    rows = check_balls(G1, balls)
    reg = is_M_regular(G1, balls, M)
    if not reg.ok:
        raise NotMRegular(reg.reason or "not M-regular")
    P2 = build_graph([(0, 1)], 2)
    prod, idx = direct_product(G1, P2)
    owner = {}
    for j, (b, r) in enumerate(zip(balls, rows)):
        for v in b.open_ball(r):
            owner[v] = j
    kept = [v for v in range(G1.n) if v not in owner]
    new = {v: i for i, v in enumerate(kept)}
    nk = len(kept)
    star = [2 * nk + j for j in range(len(balls))]
    edges = []
    for u, v in G1.edges():
        if u in new and v in new:
            edges.append((2 * new[u], 2 * new[v] + 1))
            edges.append((2 * new[u] + 1, 2 * new[v]))
    for j, (b, r) in enumerate(zip(balls, rows)):
        for w in b.sphere(r):
            edges.append((2 * new[w], star[j]))
            edges.append((2 * new[w] + 1, star[j]))
    gstar = build_graph(edges, 2 * nk + len(balls))
    F = []
    for vid in range(prod.n):
        w, i = idx.backward(vid)
        F.append(2 * new[w] + i if w in new else star[owner[w]])
    K = max(b.radius for b in balls)
    return StarProduct(gstar, tuple(F), prod, idx, K, M)


# ---------------------------------------------------------------------------
# embeddings of a factor into a direct product


@dataclass(frozen=True)
class Embedding:
    domain: Graph
    codomain: Graph
    f: tuple[int, ...]
    note: str = ""

    def report(self) -> QiReport:
        return qi_constants(self.domain, self.codomain, self.f)


def g2odd_embedding(G1: Graph, G2: Graph) -> Embedding:
    """``w -> (w, v0)`` with ``v0`` on a shortest odd cycle of ``G2``."""
    gi = odd_girth(G2)
    if gi == INF:
        raise NoOddCycle("second factor is bipartite")
    v0 = min(v for v in range(G2.n) if parity_distances(G2, v).odd[v] == gi)
    prod, idx = direct_product(G1, G2)
    f = tuple(idx.forward(w, v0) for w in range(G1.n))
    return Embedding(G1, prod, f, f"v0={v0}")


def no_odd_embedding(G1: Graph, G2: Graph) -> Embedding:
    """Parity-aware embedding of a bipartite ``G1`` into one component of ``G1 x G2``."""
    if is_bipartite(G1) is None or is_bipartite(G2) is None:
        raise GraphError("both factors must be bipartite")
    if len(components(G1)) != 1:
        raise GraphError("first factor must be connected")
    v1, v2 = G2.edges()[0]
    prod, idx = direct_product(G1, G2)
    comp = next(c for c in components(prod) if idx.forward(0, v1) in c)
    sub, keep = induced_subgraph(prod, comp)
    pos = {v: i for i, v in enumerate(keep)}
    d0 = bfs_hops(G1, 0)
    f = tuple(pos[idx.forward(w, v1 if d0[w] % 2 == 0 else v2)] for w in range(G1.n))
    return Embedding(G1, sub, f, f"edge=({v1},{v2})")


@dataclass(frozen=True)
class LP2Check:
    agree: bool
    mismatches: int
    fullness: int
    diam_v2: float


def lp2_inclusion(G1: Graph, G2: Graph) -> LP2Check:
    """Compare distances of ``G1 x [w1, w2]`` with those inside ``G1 x G2``."""
    if odd_girth(G1) == INF:
        raise NoOddCycle("first factor needs an odd cycle")
    if is_bipartite(G2) is None:
        raise GraphError("second factor must be bipartite")
    w1, w2 = G2.edges()[0]
    prod, idx = direct_product(G1, G2)
    verts = [idx.forward(u, w) for u in range(G1.n) for w in (w1, w2)]
    sub, keep = induced_subgraph(prod, verts)
    Dfull = hop_matrix(prod)
    Dsub = hop_matrix(sub)
    mism = int(np.count_nonzero(Dfull[np.ix_(keep, keep)] != Dsub))
    full = int(Dfull[:, keep].min(axis=1).max())
    return LP2Check(mism == 0, mism, full, diam_vertices(G2) / UNIT)


def dense_embedding(G1: Graph) -> Embedding:
    """``w -> (w, v1)`` into ``G1 x P2``."""
    P2 = build_graph([(0, 1)], 2)
    prod, idx = direct_product(G1, P2)
    return Embedding(G1, prod, tuple(idx.forward(w, 0) for w in range(G1.n)))


def max_dist_to_cycles(G1: Graph) -> float:
    """Largest vertex distance to a minimal cycle, in edges."""
    d = dist_to_minimal_cycles(G1, cycles=minimal_cycles(G1))
    return max(d) / UNIT if d else 0
