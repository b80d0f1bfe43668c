"""Exact Gromov (Rips) hyperbolicity constants of finite graphs.

Lengths are integers in sixteenths of an edge.  The engine works on a
subdivision ``H`` fine enough that corners and every breakpoint of the
piecewise-linear distance functions along triangle sides are vertices of
``H``.  For a side point ``p`` on some ``x, y``-geodesic, the two remaining
sides can be chosen independently, so

    delta = max_{x,y,z,p} min(F(p; x, z), F(p; y, z))

where ``F(p; x, z)`` is the largest possible distance from ``p`` to an
``x, z``-geodesic.  ``F`` is a bottleneck path value over the shortest-path
DAG towards ``z`` and is computed for all ``x`` and ``p`` at once.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph_core import (
    INF,
    UNIT,
    Graph,
    GraphError,
    Point,
    components,
    diam_continuous,
    hop_matrix,
    induced_subgraph,
    subdivide,
)

log = logging.getLogger(__name__)

__all__ = [
    "Budget",
    "GeodesicBudgetExceeded",
    "Disconnected",
    "EmptyGraph",
    "NotAGeodesic",
    "Triangle",
    "Witness",
    "ThinResult",
    "DeltaResult",
    "enumerate_geodesics",
    "count_geodesics",
    "thin_constant",
    "delta_exact",
    "delta_vertex",
    "delta_upper_diam",
    "side_points",
]

EXACT = "exact"
LOWER = "lower-bound"
UPPER = "upper-bound"


class GeodesicBudgetExceeded(RuntimeError):
    def __init__(self, count: int):
        super().__init__(f"more than {count} geodesics")
        self.count = count


class Disconnected(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class NotAGeodesic(GraphError):
    def __init__(self, side: int, reason: str):
        super().__init__(f"side {side}: {reason}")
        self.side = side


@dataclass(frozen=True)
class Budget:
    geodesics_per_pair: int = 10_000
    triangles: int = 10_000_000


# ---------------------------------------------------------------------------
# geodesics


def _dist_row(G: Graph, v: int) -> list[int]:
    from .graph_core import bfs_hops

    return bfs_hops(G, v)


def enumerate_geodesics(G: Graph, u: int, v: int, cap: int = 10_000) -> list[list[int]]:
    """All shortest ``u, v``-paths in lexicographic order.

    Raises :class:`GeodesicBudgetExceeded` once more than ``cap`` exist.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    to_v = _dist_row(G, v)
    if to_v[u] < 0:
        raise Disconnected(f"{u} and {v} are in different components")
    out: list[list[int]] = []
    path = [u]

    def walk(cur: int) -> None:
        if cur == v:
            if len(out) >= cap:
                raise GeodesicBudgetExceeded(len(out))
            out.append(list(path))
            return
        want = to_v[cur] - 1
        for w in G.adjacency[cur]:
            if to_v[w] == want:
                path.append(w)
                walk(w)
                path.pop()

    walk(u)
    return out


def count_geodesics(G: Graph, u: int, v: int) -> int:
    to_v = _dist_row(G, v)
    if to_v[u] < 0:
        raise Disconnected(f"{u} and {v} are in different components")
    order = sorted(range(G.n), key=lambda w: to_v[w])
    count = [0] * G.n
    count[v] = 1
    for w in order:
        if to_v[w] <= 0:
            continue
        count[w] = sum(count[x] for x in G.adjacency[w] if to_v[x] == to_v[w] - 1)
    return count[u]


# ---------------------------------------------------------------------------
# triangles and their thin constant


@dataclass(frozen=True)
class Triangle:
    """Corners ``x, y, z`` with sides ``[xy], [yz], [zx]`` as point sequences.

    Consecutive points of a side lie on a common edge.
    """

    corners: tuple[Point, Point, Point]
    sides: tuple[tuple[Point, ...], tuple[Point, ...], tuple[Point, ...]]

    def to_json(self) -> dict:
        return {
            "corners": [_point_json(c) for c in self.corners],
            "sides": [[_point_json(p) for p in s] for s in self.sides],
        }


def _point_json(p: Point) -> dict:
    if p.is_vertex:
        return {"vertex": p.a}
    return {"edge": [p.a, p.b], "offset16": p.offset}


@dataclass(frozen=True)
class ThinResult:
    value: int
    side: int
    point: Point

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.value, UNIT)


def _segment_points(s: Point, t: Point, G: Graph) -> list[Point] | None:
    """Sixteenth-grid points from ``s`` to ``t`` along one edge, or None."""
    if s == t:
        return [s]
    cands = set()
    for p in (s, t):
        if not p.is_vertex:
            cands.add((p.a, p.b))
    if not cands and G.has_edge(s.a, t.a):
        cands.add((min(s.a, t.a), max(s.a, t.a)))
    for a, b in cands:
        def pos(p: Point) -> int | None:
            if p.is_vertex:
                return 0 if p.a == a else UNIT if p.a == b else None
            return p.offset if (p.a, p.b) == (a, b) else None

        ps, pt = pos(s), pos(t)
        if ps is None or pt is None:
            continue
        step = 1 if pt > ps else -1
        return [Point.on_edge(a, b, o) for o in range(ps, pt + step, step)]
    return None


def side_points(G: Graph, side: Sequence[Point]) -> list[Point]:
    """Every sixteenth-grid point of a side, in order (raises on a broken side)."""
    out = [side[0]]
    for s, t in zip(side, side[1:]):
        seg = _segment_points(s, t, G)
        if seg is None:
            raise GraphError(f"{s} and {t} do not share an edge")
        out.extend(seg[1:])
    return out


def _grid_arrays(pts: Sequence[Point]) -> tuple[np.ndarray, ...]:
    a = np.array([p.a for p in pts])
    b = np.array([p.b for p in pts])
    oa = np.array([p.offset for p in pts])
    ob = np.array([0 if p.is_vertex else UNIT - p.offset for p in pts])
    # edge key for the same-edge shortcut; vertices get -1
    key = np.array([-1 if p.is_vertex else p.a * 1_000_003 + p.b for p in pts])
    return a, b, oa, ob, key


def _grid_distances(P: Sequence[Point], Q: Sequence[Point], D16: np.ndarray) -> np.ndarray:
    pa, pb, poa, pob, pk = _grid_arrays(P)
    qa, qb, qoa, qob, qk = _grid_arrays(Q)
    best = None
    for e1, o1 in ((pa, poa), (pb, pob)):
        for e2, o2 in ((qa, qoa), (qb, qob)):
            cand = o1[:, None] + D16[np.ix_(e1, e2)] + o2[None, :]
            best = cand if best is None else np.minimum(best, cand)
    same = (pk[:, None] == qk[None, :]) & (pk[:, None] >= 0)
    if same.any():
        direct = np.abs(poa[:, None] - qoa[None, :])
        best = np.where(same, np.minimum(best, direct), best)
    return best


def thin_constant(G: Graph, T: Triangle) -> ThinResult:
    """Sharp thin constant of ``T`` in sixteenths, with a farthest side point.

    Exact when the corners lie on the eighth grid (even offsets): then every
    breakpoint of ``p -> d(p, other sides)`` is a sixteenth-grid point.
    """
    hops = hop_matrix(G)
    reach_inf = hops < 0
    D16 = hops * UNIT
    D16[reach_inf] = 1 << 40
    for c in T.corners:
        c.check(G)
        if c.offset % 2:
            raise GraphError(f"corner {c} is off the eighth grid")
    ends = [(T.corners[0], T.corners[1]), (T.corners[1], T.corners[2]), (T.corners[2], T.corners[0])]
    grids = []
    for i, (side, (s, t)) in enumerate(zip(T.sides, ends)):
        if not side or side[0] != s or side[-1] != t:
            raise NotAGeodesic(i, "side does not join its corners")
        try:
            pts = side_points(G, side)
        except GraphError as exc:
            raise NotAGeodesic(i, str(exc)) from None
        length = sum(
            _grid_distances([p], [q], D16)[0, 0] for p, q in zip(pts, pts[1:])
        )
        dist = _grid_distances([s], [t], D16)[0, 0]
        if dist >= 1 << 40:
            raise NotAGeodesic(i, "corners in different components")
        if length != dist:
            raise NotAGeodesic(i, f"length {length}/16 exceeds distance {dist}/16")
        grids.append(pts)
    best = ThinResult(-1, 0, T.corners[0])
    for i in range(3):
        others = grids[(i + 1) % 3] + grids[(i + 2) % 3]
        near = _grid_distances(grids[i], others, D16).min(axis=1)
        j = int(np.argmax(near))
        if near[j] > best.value:
            best = ThinResult(int(near[j]), i, grids[i][j])
    return best


# ---------------------------------------------------------------------------
# the exact engine


@dataclass(frozen=True)
class Witness:
    triangle: Triangle
    point: Point
    side: int = 0

    def to_json(self) -> dict:
        return {
            "triangle": self.triangle.to_json(),
            "point": _point_json(self.point),
            "side": self.side,
        }


@dataclass(frozen=True)
class DeltaResult:
    delta: float  # sixteenths, or INF
    mode: str
    witness: Witness | None = None
    corner_step: int = UNIT // 2
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def fraction(self) -> Fraction:
        if self.delta == INF:
            raise OverflowError("infinite delta")
        return Fraction(int(self.delta), UNIT)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def to_json(self) -> dict:
        f = self.fraction
        return {
            "delta_num": f.numerator,
            "delta_den": f.denominator,
            "mode": self.mode,
            "witness": self.witness.to_json() if self.witness else None,
        }


class _Layers:
    """Shortest-path DAG of ``H`` towards a root, grouped by distance."""

    def __init__(self, H: Graph, drow: np.ndarray):
        order = np.argsort(drow, kind="stable")
        self.layers = []
        cur_t = 0
        group: list[int] = []
        parents: list[int] = []
        starts: list[int] = []
        for q in order[1:]:
            q = int(q)
            t = int(drow[q])
            if t != cur_t:
                if group:
                    self.layers.append((np.array(group), np.array(parents), np.array(starts)))
                group, parents, starts, cur_t = [], [], [], t
            group.append(q)
            starts.append(len(parents))
            parents.extend(w for w in H.adjacency[q] if drow[w] == t - 1)
        if group:
            self.layers.append((np.array(group), np.array(parents), np.array(starts)))


def _bottleneck(H: Graph, D: np.ndarray, root: int, rows: np.ndarray | None = None) -> np.ndarray:
    """``B[p, q]``: max over ``q, root``-geodesics of the min of ``D[p, .]`` along it."""
    W = D if rows is None else D[rows]
    B = np.empty_like(W)
    B[:, root] = W[:, root]
    for group, parents, starts in _Layers(H, D[root]).layers:
        best = np.maximum.reduceat(B[:, parents], starts, axis=1)
        B[:, group] = np.minimum(W[:, group], best)
    return B


@dataclass
class _ComponentRun:
    value: int  # in H hops
    key: tuple[int, int, int, int] | None  # (x, y, z, p) as H ids
    complete: bool
    triangles: int
    skipped: int


def _scan(
    Dp: np.ndarray,
    DX: np.ndarray,
    Fp: np.ndarray,
    corners: np.ndarray,
    zs: np.ndarray,
    p_order: Sequence[int],
    ub: np.ndarray,
    prune: bool,
) -> tuple[int, tuple | None, int]:
    X = len(corners)
    upper = np.triu(np.ones((X, X), dtype=bool))
    best = -1
    best_key = None
    skipped = 0
    for p in p_order:
        if prune and ub[p] < best:
            skipped += 1
            continue
        row = Dp[p]
        mask = (row[:, None] + row[None, :] == DX) & upper
        xs, ys = np.nonzero(mask)
        if len(xs) == 0:
            continue
        F = Fp[p]
        vals = np.minimum(F[:, xs], F[:, ys])
        vp = int(vals.max())
        if vp < best:
            continue
        zi, pi = np.nonzero(vals == vp)
        keys = np.stack([corners[xs[pi]], corners[ys[pi]], zs[zi]], axis=1)
        k = keys[np.lexsort(keys.T[::-1])[0]]
        key = (int(k[0]), int(k[1]), int(k[2]), int(p))
        if vp > best or key < best_key:
            best, best_key = vp, key
    return best, best_key, skipped


def _component_delta(
    Gc: Graph, corner_step: int, budget: Budget, prune: bool, jobs: int
) -> tuple[_ComponentRun, Graph, list[Point], np.ndarray]:
    k = 2 * UNIT // corner_step
    H, pts = subdivide(Gc, k)
    D = hop_matrix(H).astype(np.int32)
    corners = np.array([i for i, p in enumerate(pts) if p.offset % corner_step == 0])
    X = len(corners)
    per_z = X * X
    nz = X if X * per_z <= budget.triangles else budget.triangles // per_z
    complete = nz == X
    zs = corners[:nz]
    if nz == 0:
        return _ComponentRun(0, None, False, 0, 0), H, pts, D
    dtype = np.int16 if D.max() < 2**15 else np.int32
    Dn = D.astype(dtype)
    # F[z, p, x]: largest distance from p to an x,z-geodesic
    F = np.empty((nz, H.n, X), dtype=dtype)
    for i, z in enumerate(zs):
        F[i] = _bottleneck(H, Dn, int(z))[:, corners]
    Fp = np.ascontiguousarray(F.transpose(1, 0, 2))
    del F
    Dp = Dn[:, corners]
    DX = Dn[np.ix_(corners, corners)]
    ub = Fp.reshape(H.n, -1).max(axis=1)
    p_all = list(np.argsort(-ub, kind="stable")) if prune else list(range(H.n))
    if jobs > 1:
        chunks = [p_all[i::jobs] for i in range(jobs)]
        with ThreadPoolExecutor(jobs) as ex:
            parts = list(ex.map(lambda c: _scan(Dp, DX, Fp, corners, zs, c, ub, prune), chunks))
    else:
        parts = [_scan(Dp, DX, Fp, corners, zs, p_all, ub, prune)]
    best, key, skipped = -1, None, 0
    for v, kk, sk in parts:
        skipped += sk
        if kk is None:
            continue
        if v > best or (v == best and kk < key):
            best, key = v, kk
    run = _ComponentRun(max(best, 0), key, complete, nz * per_z, skipped)
    return run, H, pts, D


def _greedy_path(H: Graph, D: np.ndarray, src: int, dst: int, score: np.ndarray | None = None) -> list[int]:
    """A ``src, dst``-geodesic; maximises ``score`` greedily, else smallest ids."""
    path = [src]
    cur = src
    while cur != dst:
        want = D[dst, cur] - 1
        nxt = [w for w in H.adjacency[cur] if D[dst, w] == want]
        if score is not None:
            top = max(score[w] for w in nxt)
            nxt = [w for w in nxt if score[w] == top]
        cur = nxt[0]
        path.append(cur)
    return path


def _to_side(path: list[int], pts: list[Point], keep: list[int]) -> tuple[Point, ...]:
    out = []
    for i, h in enumerate(path):
        p = pts[h]
        if i in (0, len(path) - 1) or p.is_vertex:
            out.append(_lift_point(p, keep))
    return tuple(out)


def _lift_point(p: Point, keep: list[int]) -> Point:
    if p.is_vertex:
        return Point.vertex(keep[p.a])
    return Point.on_edge(keep[p.a], keep[p.b], p.offset)


def _witness(H: Graph, D: np.ndarray, pts: list[Point], keep: list[int], key) -> Witness:
    x, y, z, p = key
    xy = _greedy_path(H, D, x, p) + _greedy_path(H, D, p, y)[1:]
    B = _bottleneck(H, D, z, rows=np.array([p]))[0]
    yz = _greedy_path(H, D, y, z, B)
    xz = _greedy_path(H, D, x, z, B)
    tri = Triangle(
        (_lift_point(pts[x], keep), _lift_point(pts[y], keep), _lift_point(pts[z], keep)),
        (_to_side(xy, pts, keep), _to_side(yz, pts, keep), _to_side(xz[::-1], pts, keep)),
    )
    return Witness(tri, _lift_point(pts[p], keep), 0)


def _trivial_witness(v: int) -> Witness:
    c = Point.vertex(v)
    return Witness(Triangle((c, c, c), ((c,), (c,), (c,))), c, 0)


def _delta(
    G: Graph, corner_step: int, budget: Budget | None, prune: bool, jobs: int
) -> DeltaResult:
    if G.n == 0:
        raise EmptyGraph("graph has no vertices")
    budget = budget or Budget()
    best = -1
    witness = None
    complete = True
    stats = {"components": 0, "triangles": 0, "pruned_points": 0}
    for comp in components(G):
        stats["components"] += 1
        Gc, keep = induced_subgraph(G, comp)
        if Gc.n == 1:
            value, wit = 0, _trivial_witness(keep[0])
        else:
            run, H, pts, D = _component_delta(Gc, corner_step, budget, prune, jobs)
            stats["triangles"] += run.triangles
            stats["pruned_points"] += run.skipped
            complete &= run.complete
            scale = corner_step // 2
            value = run.value * scale
            wit = _witness(H, D, pts, keep, run.key) if run.key else None
        if value > best:
            best, witness = value, wit
    mode = EXACT if complete else LOWER
    if mode == EXACT and best % (corner_step // 2):
        raise AssertionError(f"delta {best}/16 is not a multiple of {corner_step // 2}/16")
    return DeltaResult(best, mode, witness, corner_step, stats)


def delta_exact(
    G: Graph, budget: Budget | None = None, *, prune: bool = True, jobs: int = 1, corner_step: int = 8
) -> DeltaResult:
    """Exact hyperbolicity constant, maximising over triangles with corners in J(G).

    ``corner_step`` (sixteenths) may be lowered to 4 or 2 to search finer
    corner grids; the result must not change.  If the corner-triple budget
    is too small only a prefix of third corners is scanned and the result is
    a lower bound.
    """
    if corner_step not in (2, 4, 8, 16):
        raise ValueError("corner_step must be 2, 4, 8 or 16")
    return _delta(G, corner_step, budget, prune, jobs)


def delta_vertex(
    G: Graph, budget: Budget | None = None, *, prune: bool = True, jobs: int = 1
) -> DeltaResult:
    """Thin constant over triangles whose corners are vertices."""
    return _delta(G, UNIT, budget, prune, jobs)


def delta_upper_diam(G: Graph) -> float:
    """Half the largest continuous diameter over components (sixteenths)."""
    if G.n == 0:
        raise EmptyGraph("graph has no vertices")
    best = 0
    for comp in components(G):
        Gc, _ = induced_subgraph(G, comp)
        best = max(best, diam_continuous(Gc) // 2)
    return best
