"""Exhaustive reference computation of delta for small graphs.

Enumerates every corner triple and every choice of geodesic sides, and
evaluates each triangle on the full sixteenth grid.  No shared code path
with the engine in :mod:`gromovprod.hyperbolicity` beyond BFS and
subdivision.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .graph_core import UNIT, Graph, Point, components, hop_matrix, induced_subgraph, subdivide
from .hyperbolicity import enumerate_geodesics


def brute_delta(G: Graph, corner_step: int = 8, cap: int = 10_000) -> Fraction:
    best = Fraction(0)
    for comp in components(G):
        Gc, _ = induced_subgraph(G, comp)
        if Gc.n > 1:
            best = max(best, _component(Gc, corner_step, cap))
    return best


def _component(G: Graph, corner_step: int, cap: int) -> Fraction:
    k = UNIT // corner_step
    C, cpts = subdivide(G, k)
    corners = list(range(C.n))
    fine, fpts = subdivide(G, UNIT)
    D = hop_matrix(fine)
    # fine id of every point of the corner-level subdivision
    fine_id = {p: i for i, p in enumerate(fpts)}

    def expand(path: list[int]) -> np.ndarray:
        out = [fine_id[cpts[path[0]]]]
        for s, t in zip(path, path[1:]):
            ps, pt = cpts[s], cpts[t]
            # the two points share an edge of G; walk it at unit resolution
            a, b = _edge_of(ps, pt)
            os_, ot = _pos(ps, a, b), _pos(pt, a, b)
            sgn = 1 if ot > os_ else -1
            for o in range(os_ + sgn, ot + sgn, sgn):
                out.append(fine_id[_mk(a, b, o)])
        return np.array(out)

    geos: dict[tuple[int, int], list[np.ndarray]] = {}
    for u, v in itertools.combinations_with_replacement(corners, 2):
        paths = [expand(p) for p in enumerate_geodesics(C, u, v, cap)]
        geos[(u, v)] = paths
        geos[(v, u)] = [p[::-1] for p in paths]
    best = 0
    for x, y, z in itertools.combinations_with_replacement(corners, 3):
        for s1 in geos[(x, y)]:
            for s2 in geos[(y, z)]:
                for s3 in geos[(z, x)]:
                    best = max(best, _thin(D, s1, s2, s3))
    return Fraction(best, UNIT)  # fine hops are sixteenths of an edge


def _thin(D: np.ndarray, s1: np.ndarray, s2: np.ndarray, s3: np.ndarray) -> int:
    t = 0
    for a, b, c in ((s1, s2, s3), (s2, s3, s1), (s3, s1, s2)):
        other = np.concatenate([b, c])
        t = max(t, int(D[np.ix_(a, other)].min(axis=1).max()))
    return t


def _edge_of(p, q) -> tuple[int, int]:
    for r in (p, q):
        if not r.is_vertex:
            return r.a, r.b
    return min(p.a, q.a), max(p.a, q.a)


def _pos(p, a, b) -> int:
    if p.is_vertex:
        return 0 if p.a == a else UNIT
    return p.offset


def _mk(a, b, o):
    return Point.on_edge(a, b, o)
