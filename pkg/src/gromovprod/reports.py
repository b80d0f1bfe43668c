"""Theorem reports: expected values or bounds against computed ones.

Every computed delta is carried as an interval: a point for exact results,
``[v, inf)`` for budget-limited lower bounds.  An instance passes when the
interval lies inside the allowed range, fails when the two are disjoint, and
is indeterminate otherwise.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .families import corpus, cycle, cycle_with_pendant, dumbbell, path, random_graph, random_tree
from .graph_core import (
    INF,
    UNIT,
    Graph,
    GraphError,
    Point,
    bfs_hops,
    build_graph,
    components,
    diam_continuous,
    diam_vertices,
    hop_matrix,
    induced_subgraph,
    is_bipartite,
)
from .hyperbolicity import Budget, DeltaResult, Triangle, delta_exact, delta_vertex, enumerate_geodesics, thin_constant
from .odd_cycles import (
    is_isometric_cycle,
    minimal_cycles,
    odd_girth,
    reduce_cycle,
    reduce_to_minimal,
)
from .parity_metric import cmxpn_distance, pair_distance, parity_distances, product_distance
from .products import direct_product, predict_component_count
from .qi_toolkit import (
    BallSpec,
    check_lemma_dc,
    collapse_balls,
    dense_embedding,
    g2odd_embedding,
    is_M_regular,
    lift_gamma,
    lp2_inclusion,
    measure_extension,
    no_odd_embedding,
    product_star,
    qi_constants,
)

PASS, FAIL, INDET = "pass", "fail", "indeterminate"
# exit codes: 0 all pass, 1 some failure, 4 nothing failed but something indeterminate
INDET_EXIT = 4


class NotBipartite(GraphError):
    pass


# ---------------------------------------------------------------------------
# values with budget-aware uncertainty


@dataclass(frozen=True)
class Val:
    lo: Fraction
    hi: Fraction | float

    @classmethod
    def of(cls, res: DeltaResult) -> Val:
        return cls(res.fraction, res.fraction if res.exact else INF)

    @classmethod
    def exact(cls, x) -> Val:
        return cls(Fraction(x), Fraction(x))

    def __add__(self, other: Val) -> Val:
        return Val(self.lo + other.lo, self.hi + other.hi)

    def scale(self, k: int) -> Val:
        return Val(self.lo * k, self.hi * k)

    @property
    def known(self) -> bool:
        return self.hi == self.lo


def judge(v: Val, lo=None, hi=None) -> str:
    """Status of ``v`` against the allowed range ``[lo, hi]`` (either end open)."""
    if (hi is not None and v.lo > hi) or (lo is not None and v.hi < lo):
        return FAIL
    if (hi is None or v.hi <= hi) and (lo is None or v.lo >= lo):
        return PASS
    return INDET


def num(x) -> dict | None:
    if x is None or x == INF:
        return None
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


@dataclass
class Instance:
    params: dict
    expected: dict
    computed: dict
    status: str

    def to_json(self) -> dict:
        return {"params": self.params, "expected": self.expected, "computed": self.computed, "status": self.status}


def _range_instance(params: dict, v: Val, lo=None, hi=None) -> Instance:
    if lo is not None and lo == hi:
        exp = {"relation": "eq", "value": num(lo)}
    else:
        exp = {"relation": "in", "lo": num(lo), "hi": num(hi)}
    comp = {"value": num(v.lo)} if v.known else {"lower": num(v.lo)}
    return Instance(params, exp, comp, judge(v, lo, hi))


def _bool_instance(params: dict, ok: bool, detail: dict | None = None) -> Instance:
    return Instance(params, {"relation": "holds"}, detail or {}, PASS if ok else FAIL)


@dataclass
class TheoremReport:
    theorem: str
    instances: list[Instance] = field(default_factory=list)

    @property
    def status(self) -> str:
        st = {i.status for i in self.instances}
        if FAIL in st:
            return FAIL
        if INDET in st:
            return INDET
        return PASS

    @property
    def totals(self) -> dict:
        return {s: sum(i.status == s for i in self.instances) for s in (PASS, FAIL, INDET)}

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "totals": self.totals,
            "instances": [i.to_json() for i in self.instances],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def tsv_lines(self) -> list[str]:
        out = []
        for i in self.instances:
            out.append("\t".join([self.theorem, json.dumps(i.params, sort_keys=True), i.status]))
        return out


def _delta(G: Graph, budget: Budget | None, jobs: int, **kw) -> Val:
    return Val.of(delta_exact(G, budget, jobs=jobs, **kw))


# ---------------------------------------------------------------------------
# closed forms for products of cycles and paths


def cmxpn_expected(m: int, n: int) -> Fraction:
    if n - 1 <= m:
        return Fraction(m, 2)
    if n - 1 < 2 * m:
        return Fraction(n - 1, 2)
    return m - Fraction(1, 2)


def report_cmxpn(m_list: Sequence[int], n_list: Sequence[int], budget: Budget | None = None, jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("t:CmxPn")
    for m in m_list:
        if m < 3 or m % 2 == 0:
            raise ValueError(f"m must be odd and >= 3, got {m}")
        for n in n_list:
            P, _ = direct_product(cycle(m), path(n))
            e = cmxpn_expected(m, n)
            rep.instances.append(_range_instance({"m": m, "n": n}, _delta(P, budget, jobs), e, e))
    return rep


def pmxpn_expected(m: int, n: int) -> tuple[Fraction, Fraction]:
    if n == 2:
        return Fraction(0), Fraction(0)
    if m % 2 == 1 and m <= 2 * n - 3:
        e = Fraction(m - 1, 2)
        return e, e
    lo = min(Fraction(m, 2), Fraction(n - 1)) - 1
    hi = min(Fraction(m, 2), Fraction(n)) - Fraction(1, 2)
    return lo, hi


def report_pmxpn(m_list: Sequence[int], n_list: Sequence[int], budget: Budget | None = None, jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("t:path")
    for m in m_list:
        for n in n_list:
            if not m >= n >= 2:
                continue
            P, _ = direct_product(path(m), path(n))
            lo, hi = pmxpn_expected(m, n)
            rep.instances.append(_range_instance({"m": m, "n": n}, _delta(P, budget, jobs), lo, hi))
    return rep


def bipartite_bounds(k1: int, k2: int, d1: Fraction, d2: Fraction) -> tuple[Fraction, Fraction]:
    hi = Fraction(k1, 2)
    lo = max(min(Fraction(k1 - 1, 2), Fraction(k2 - 1)), d1, d2)
    if k1 % 2 == 0 and k1 <= 2 * k2 - 2:
        lo = hi
    return lo, hi


def report_bipartite(
    pairs: Sequence[tuple[str, Graph, Graph]], budget: Budget | None = None, jobs: int = 1
) -> TheoremReport:
    rep = TheoremReport("t:bipartite")
    for name, G1, G2 in pairs:
        for G in (G1, G2):
            if is_bipartite(G) is None:
                raise NotBipartite(f"{name}: factor is not bipartite")
            if len(components(G)) != 1 or G.n < 2:
                raise GraphError(f"{name}: factors must be connected and non-trivial")
        k1, k2 = diam_vertices(G1) // UNIT, diam_vertices(G2) // UNIT
        if k1 < k2:
            G1, G2, k1, k2 = G2, G1, k2, k1
        d1, d2 = _delta(G1, budget, jobs), _delta(G2, budget, jobs)
        P, _ = direct_product(G1, G2)
        v = _delta(P, budget, jobs)
        if not (d1.known and d2.known):
            rep.instances.append(Instance({"pair": name}, {}, {"lower": num(v.lo)}, INDET))
            continue
        lo, hi = bipartite_bounds(int(k1), int(k2), d1.lo, d2.lo)
        inst = _range_instance({"pair": name, "k1": int(k1), "k2": int(k2)}, v, lo, hi)
        rep.instances.append(inst)
    return rep


# ---------------------------------------------------------------------------
# growth experiments


def unbounded_triangle(n: int) -> tuple[Graph, Triangle, list[list[int]]]:
    """The explicit three-geodesic triangle in ``P_n x P_n`` for odd ``n``."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    P, idx = direct_product(path(n), path(n))

    def v(i: int, j: int) -> int:  # 1-based (w_i, v_j)
        return idx.forward(i - 1, j - 1)

    g1 = [v(i, 2 if i % 2 else 1) for i in range(1, n + 1)]
    g2 = [v(1 if j % 2 == 0 else 2, j) for j in range(2, n + 1)]
    g3 = [v(i, n + 2 - i) for i in range(2, n + 1)]
    sides = [g1, g3[::-1], g2[::-1]]
    corners = tuple(Point.vertex(s[0]) for s in sides)
    T = Triangle(corners, tuple(tuple(Point.vertex(x) for x in s) for s in sides))
    return P, T, sides


def report_unbounded_growth(n_list: Sequence[int]) -> TheoremReport:
    rep = TheoremReport("p:unbounded")
    for n in n_list:
        P, T, sides = unbounded_triangle(n)
        rows1 = [parity_distances(path(n), i) for i in range(n)]
        geodesic = True
        for s in sides:
            (a1, a2), (b1, b2) = divmod(s[0], n), divmod(s[-1], n)
            d = product_distance(rows1[a1].entry(b1), rows1[a2].entry(b2))
            geodesic &= d == len(s) - 1
        if not geodesic:
            rep.instances.append(_bool_instance({"n": n, "check": "sides geodesic"}, False))
            continue
        t = thin_constant(P, T)
        rep.instances.append(_range_instance({"n": n}, Val.exact(t.fraction), Fraction(n - 3, 2), None))
    return rep


def report_p2_growth(L_list: Sequence[int], budget: Budget | None = None, jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("t:P2")
    P2 = path(2)
    prev = None
    for L in L_list:
        D = dumbbell(L)
        dD = _delta(D, budget, jobs)
        prod, _ = direct_product(D, P2)
        dP = _delta(prod, budget, jobs)
        rhs = dP.scale(2) + dD.scale(4)
        # sqrt(L/2) <= rhs  <=>  L/2 <= rhs^2 for rhs >= 0
        need = Fraction(L, 2)
        sq = Val(rhs.lo * rhs.lo, rhs.hi * rhs.hi if rhs.hi != INF else INF)
        inst = _range_instance({"L": L, "check": "sqrt(L/2) <= 2 d(DxP2) + 4 d(D)"}, sq, need, None)
        inst.computed["rhs"] = num(rhs.lo) if rhs.known else {"lower": num(rhs.lo)}
        rep.instances.append(inst)
        if prev is not None:
            pL, pv = prev
            if not (pv.known and dP.known):
                st = INDET if dP.lo <= pv.lo or not pv.known else PASS
            else:
                st = PASS if dP.lo > pv.lo else FAIL
            rep.instances.append(Instance(
                {"L": [pL, L], "check": "strict growth"},
                {"relation": "lt"},
                {"values": [num(pv.lo), num(dP.lo)]},
                st,
            ))
        prev = (L, dP)
    return rep


# ---------------------------------------------------------------------------
# structural checks, one per theorem id


def _bool_report(tid: str, checks) -> TheoremReport:
    rep = TheoremReport(tid)
    for params, ok, detail in checks:
        rep.instances.append(_bool_instance(params, bool(ok), detail))
    return rep


def _factor_pairs(count: int, seed: int, max_n: int = 12) -> list[tuple[Graph, Graph]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        gs = []
        for _ in range(2):
            n = rng.randint(2, max_n)
            kind = rng.choice(["tree", "cycle", "random", "path"])
            if kind == "tree":
                g = random_tree(n, rng.randrange(10**6))
            elif kind == "cycle":
                g = cycle(max(n, 3))
            elif kind == "path":
                g = path(n)
            else:
                g = random_graph(n, 0.4, rng.randrange(10**6))
            gs.append(g)
        out.append(tuple(gs))
    return out


def prop58_mismatches(pairs: int = 20, samples: int = 10, seed: int = 0) -> tuple[int, int]:
    """Compare the parity formula with BFS on the built product; returns (mismatches, checked)."""
    rng = random.Random(seed)
    bad = checked = 0
    for G1, G2 in _factor_pairs(pairs, seed):
        P, idx = direct_product(G1, G2)
        for _ in range(samples):
            a, b = rng.randrange(P.n), rng.randrange(P.n)
            (u, v), (u2, v2) = idx.backward(a), idx.backward(b)
            d = pair_distance(G1, G2, (u, v), (u2, v2))
            h = bfs_hops(P, a)[b]
            bfs = INF if h < 0 else h
            bad += d != bfs
            checked += 1
    return bad, checked


def component_count_checks(count: int = 30, seed: int = 1) -> list[tuple[dict, bool, dict]]:
    rng = random.Random(seed)
    out = []
    made = 0
    while made < count:
        G1, G2 = _factor_pairs(1, rng.randrange(10**6))[0]
        if len(components(G1)) != 1 or len(components(G2)) != 1:
            continue
        made += 1
        P, _ = direct_product(G1, G2)
        pred = predict_component_count([is_bipartite(G1) is not None, is_bipartite(G2) is not None])
        got = len(components(P))
        out.append(({"n1": G1.n, "n2": G2.n, "m1": G1.num_edges, "m2": G2.num_edges}, got == pred, {"predicted": pred, "found": got}))
    return out


def _check_components_def() -> TheoremReport:
    G = build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7)], 8)
    d = delta_exact(G).fraction
    return _bool_report("def:delta", [({"graph": "C5+P3"}, d == Fraction(5, 4), {"delta": num(d)})])


def _check_parity_vs_bfs() -> TheoremReport:
    bad, n = prop58_mismatches()
    return _bool_report("p:5.8", [({"pairs": 20, "samples": n}, bad == 0, {"mismatches": bad})])


def _check_parity_walks() -> TheoremReport:
    # a walk of every length >= the parity distance exists (pad with back-and-forth steps)
    from .parity_metric import walk_of_length

    checks = []
    for name, G in corpus()[:30]:
        if G.n < 2 or G.num_edges == 0:
            continue
        row = parity_distances(G, 0)
        ok = True
        for v in range(G.n):
            for par, d in ((0, row.even[v]), (1, row.odd[v])):
                if d == INF:
                    ok &= walk_of_length(G, 0, v, 2 * G.n + par) is None
                else:
                    w = walk_of_length(G, 0, v, int(d) + 2)
                    ok &= w is not None and len(w) == d + 3
        checks.append(({"graph": name}, ok, {}))
    return _bool_report("p:5.7", checks)


def _check_diam() -> TheoremReport:
    checks = []
    for name, G, dv, dc in (("C5", cycle(5), 2, Fraction(5, 2)), ("P4", path(4), 3, 3), ("K3", cycle(3), 1, Fraction(3, 2))):
        got = (Fraction(int(diam_vertices(G)), UNIT), Fraction(int(diam_continuous(G)), UNIT))
        checks.append(({"graph": name}, got == (dv, dc), {"diamV": num(got[0]), "diam": num(got[1])}))
    return _bool_report("def:diam", checks)


def _check_lower(seed: int = 2) -> TheoremReport:
    checks = []
    for G1, G2 in _factor_pairs(10, seed, 9):
        P, idx = direct_product(G1, G2)
        DP, D1, D2 = hop_matrix(P), hop_matrix(G1), hop_matrix(G2)
        ok = True
        for a in range(P.n):
            for b in range(P.n):
                if DP[a, b] < 0:
                    continue
                (u, v), (u2, v2) = idx.backward(a), idx.backward(b)
                ok &= DP[a, b] >= max(D1[u, u2], D2[v, v2])
        dvp = diam_vertices(P) if len(components(P)) == 1 else INF
        ok &= dvp >= max(diam_vertices(G1), diam_vertices(G2))
        checks.append(({"n1": G1.n, "n2": G2.n}, ok, {}))
    return _bool_report("c:lower", checks)


def _check_weichsel() -> TheoremReport:
    checks = []
    for name, G1, G2, want in (
        ("P3xP3", path(3), path(3), 2),
        ("C5xP4", cycle(5), path(4), 1),
        ("C5xC3", cycle(5), cycle(3), 1),
        ("C6xP2", cycle(6), path(2), 2),
    ):
        P, _ = direct_product(G1, G2)
        got = len(components(P))
        checks.append(({"pair": name}, got == want, {"components": got}))
    return _bool_report("t:5.9", checks)


def _check_component_count() -> TheoremReport:
    return _bool_report("c:5.10", component_count_checks())


def _check_lvertices() -> TheoremReport:
    checks = []
    for name, G1, G2 in (("P4xC3", path(4), cycle(3)), ("C5xC3", cycle(5), cycle(3)), ("P3xC5", path(3), cycle(5))):
        emb = g2odd_embedding(G1, G2)
        base = emb.report()
        ext = measure_extension(emb.domain, emb.codomain, emb.f)
        ok = ext.beta_at(1) <= 1 + base.beta and ext.epsilon <= base.epsilon + Fraction(1, 2)
        checks.append(({"pair": name}, ok, {"beta": num(ext.beta_at(1)), "epsilon": num(ext.epsilon)}))
    return _bool_report("l:vertices", checks)


G2ODD_CASES = (
    ("P4,C3", lambda: (path(4), cycle(3))),
    ("C5,C3", lambda: (cycle(5), cycle(3))),
    ("P5,C5", lambda: (path(5), cycle(5))),
    ("D2,K4", lambda: (dumbbell(2), build_graph([(i, j) for i in range(4) for j in range(i + 1, 4)], 4))),
)

NO_ODD_CASES = (
    ("P5,P2", lambda: (path(5), path(2))),
    ("C6,P3", lambda: (cycle(6), path(3))),
    ("tree8,C4", lambda: (random_tree(8, 1), cycle(4))),
)

LP2_CASES = (
    ("C5,P4", lambda: (cycle(5), path(4))),
    ("D3,C4", lambda: (dumbbell(3), cycle(4))),
    ("C3,tree6", lambda: (cycle(3), random_tree(6, 5))),
)


def g2odd_checks() -> list[tuple[dict, bool, dict]]:
    out = []
    for name, mk in G2ODD_CASES:
        G1, G2 = mk()
        r = g2odd_embedding(G1, G2).report()
        gi = odd_girth(G2)
        ok = r.embedding_ok and r.beta_at(1) <= gi and r.epsilon <= Fraction(int(diam_vertices(G2)), UNIT) + gi
        out.append(({"pair": name}, ok, {"beta": num(r.beta_at(1)), "epsilon": num(r.epsilon), "g_I": gi}))
    return out


def no_odd_checks() -> list[tuple[dict, bool, dict]]:
    out = []
    for name, mk in NO_ODD_CASES:
        G1, G2 = mk()
        r = no_odd_embedding(G1, G2).report()
        ok = r.embedding_ok and r.beta_at(1) == 0 and r.epsilon <= Fraction(int(diam_continuous(G2)), UNIT)
        out.append(({"pair": name}, ok, {"beta": num(r.beta_at(1)), "epsilon": num(r.epsilon)}))
    return out


def lp2_checks() -> list[tuple[dict, bool, dict]]:
    out = []
    for name, mk in LP2_CASES:
        G1, G2 = mk()
        c = lp2_inclusion(G1, G2)
        ok = c.agree and c.fullness <= c.diam_v2
        out.append(({"pair": name}, ok, {"mismatches": c.mismatches, "fullness": c.fullness}))
    return out


def _check_subgraph(budget, jobs) -> TheoremReport:
    checks = []
    for m, n in ((3, 6), (5, 6), (5, 9)):
        big, bidx = direct_product(cycle(m), path(n))
        dbig = delta_exact(big, budget, jobs=jobs)
        for n2 in range(2, n):
            sub_v = [bidx.forward(i, j) for i in range(m) for j in range(n2)]
            sub, keep = induced_subgraph(big, sub_v)
            Db, Ds = hop_matrix(big), hop_matrix(sub)
            iso = bool((Db[keep][:, keep] == Ds).all())
            dsub = delta_exact(sub, budget, jobs=jobs)
            ok = iso and (not dbig.exact or not dsub.exact or dsub.fraction <= dbig.fraction)
            checks.append(({"m": m, "n": n, "n_sub": n2}, ok, {"isometric": iso, "sub": num(dsub.fraction), "full": num(dbig.fraction)}))
    return _bool_report("l:subgraph", checks)


def _random_odd_cycles(G: Graph, rng: random.Random, tries: int = 40) -> list[tuple[int, ...]]:
    """Simple odd cycles found by random walks that close up."""
    out = set()
    for _ in range(tries):
        v = rng.randrange(G.n)
        walk = [v]
        seen = {v: 0}
        while len(walk) < 3 * G.n:
            nb = G.adjacency[walk[-1]]
            if not nb:
                break
            w = rng.choice(nb)
            if w in seen:
                cyc = walk[seen[w]:]
                if len(cyc) >= 3 and len(cyc) % 2:
                    out.add(tuple(cyc))
                break
            seen[w] = len(walk)
            walk.append(w)
    return sorted(out)


def _check_reduction(seed: int = 3) -> TheoremReport:
    rng = random.Random(seed)
    checks = []
    for name, G in corpus():
        if odd_girth(G) == INF:
            continue
        D = hop_matrix(G)
        ok = True
        for C in _random_odd_cycles(G, rng):
            red = reduce_cycle(G, C)
            ok &= (red is None) == is_isometric_cycle(G, C, D)
            if red is not None:
                ok &= red.length % 2 == 1 and red.length <= len(C) - 2
            chain = reduce_to_minimal(G, C)
            ok &= is_isometric_cycle(G, chain[-1], D)
        checks.append(({"graph": name}, ok, {}))
    return _bool_report("def:minimal", checks)


def _check_oddcycle(budget, jobs) -> TheoremReport:
    rep = TheoremReport("l:oddcycle")
    for name, G in corpus():
        cyc = minimal_cycles(G)
        if not cyc:
            continue
        v = _delta(G, budget, jobs).scale(4)
        longest = max(c.length for c in cyc)
        rep.instances.append(_range_instance({"graph": name, "longest": longest}, v, Fraction(longest), None))
    return rep


def _check_geodesic_lift() -> TheoremReport:
    checks = []
    P2 = path(2)
    for name, G in corpus()[:40]:
        if G.n < 2:
            continue
        prod, idx = direct_product(G, P2)
        DP = hop_matrix(prod)
        ok = True
        D = hop_matrix(G)
        for u in range(G.n):
            for v in range(G.n):
                if 0 < D[u, v] <= 10:
                    for g in enumerate_geodesics(G, u, v, 50)[:5]:
                        for var in (1, 2):
                            lift = lift_gamma(G, g, var)
                            a, b = idx.forward(*lift[0]), idx.forward(*lift[-1])
                            ok &= DP[a, b] == len(g) - 1
        checks.append(({"graph": name}, ok, {}))
    return _bool_report("r:geodesic", checks)


def dc_cases() -> list[tuple[str, Graph]]:
    return [("C5", cycle(5)), ("D6", dumbbell(6)), ("cycle_with_pendant(3,4)", cycle_with_pendant(3, 4))]


def dc_checks(max_len: int = 8) -> list[tuple[dict, bool, dict]]:
    from .odd_cycles import dist_to_minimal_cycles

    out = []
    for name, G in dc_cases():
        delta = delta_exact(G).fraction
        dist = dist_to_minimal_cycles(G)
        D = hop_matrix(G)
        total = good = 0
        for u in range(G.n):
            for v in range(G.n):
                if not 0 < D[u, v] <= max_len:
                    continue
                for g in enumerate_geodesics(G, u, v):
                    for j in range(len(g)):
                        c = check_lemma_dc(G, g, j, delta, dist)
                        total += 1
                        good += c.holds
        out.append(({"graph": name}, good == total, {"checked": total, "held": good}))
    return out


def _check_dc() -> TheoremReport:
    return _bool_report("l:dc", dc_checks())


def _check_cdc() -> TheoremReport:
    rep = _bool_report("c:dc", dc_checks())
    return rep


def _check_finer_corners(budget, jobs) -> TheoremReport:
    rep = TheoremReport("t:2.5")
    for name, G in corpus()[:45]:
        a = delta_exact(G, budget, jobs=jobs)
        b = delta_exact(G, budget, jobs=jobs, corner_step=4)
        ok = a.fraction == b.fraction
        rep.instances.append(_bool_instance({"graph": name}, ok, {"J": num(a.fraction), "quarter": num(b.fraction)}))
    return rep


def _check_quarter_multiple(budget, jobs) -> TheoremReport:
    checks = []
    for name, G in corpus():
        d = delta_exact(G, budget, jobs=jobs).fraction
        checks.append(({"graph": name}, (d * 4).denominator == 1, {"delta": num(d)}))
    return _bool_report("t:2.6", checks)


def _check_witness_realised(budget, jobs) -> TheoremReport:
    checks = []
    for name, G in corpus():
        r = delta_exact(G, budget, jobs=jobs)
        w = r.witness
        t = thin_constant(G, w.triangle) if w else None
        ok = t is not None and t.value == r.delta
        corners_in_j = w is not None and all(c.offset % 8 == 0 for c in w.triangle.corners)
        checks.append(({"graph": name}, ok and corners_in_j, {"delta": num(r.fraction)}))
    return _bool_report("t:2.7", checks)


def _check_vertex_sandwich(budget, jobs) -> TheoremReport:
    rep = TheoremReport("t:main2")
    for name, G in corpus():
        d = delta_exact(G, budget, jobs=jobs)
        dv = delta_vertex(G, budget, jobs=jobs)
        a, b = d.fraction, dv.fraction
        ok = b <= a <= 4 * b + Fraction(1, 2) and (b * 2).denominator == 1
        st = PASS if ok else (FAIL if d.exact and dv.exact else INDET)
        rep.instances.append(Instance({"graph": name}, {"relation": "holds"}, {"delta": num(a), "delta_v": num(b)}, st))
    return rep


def _check_dense() -> TheoremReport:
    from .odd_cycles import dist_to_minimal_cycles

    checks = []
    for name, G in (("C5", cycle(5)), ("D4", dumbbell(4)), ("pendant(3,4)", cycle_with_pendant(3, 4)), ("K4", build_graph([(i, j) for i in range(4) for j in range(i + 1, 4)], 4))):
        K = max(dist_to_minimal_cycles(G)) / UNIT
        d = delta_exact(G).fraction
        r = dense_embedding(G).report()
        ok = r.beta_at(1) <= 2 * Fraction(int(K)) + 4 * d and r.epsilon <= 1
        checks.append(({"graph": name, "K": int(K)}, ok, {"beta": num(r.beta_at(1)), "epsilon": num(r.epsilon)}))
    return _bool_report("l:dense", checks)


def _check_tdense() -> TheoremReport:
    # the two factor embeddings that reduce the general case to the P2 one
    checks = []
    for name, G1, G2 in (("D3,C3", dumbbell(3), cycle(3)), ("C5,P4", cycle(5), path(4))):
        if odd_girth(G2) != INF:
            r = g2odd_embedding(G1, G2).report()
            ok = r.alpha == 1 and r.beta_at(1) <= odd_girth(G2)
        else:
            ok = lp2_inclusion(G1, G2).agree
        checks.append(({"pair": name}, ok, {}))
    return _bool_report("t:dense", checks)


COLLAPSE_CASES = (
    ("D4", lambda: (dumbbell(4), [BallSpec(2, 1), BallSpec(6, 1)])),
    ("D6 r2", lambda: (dumbbell(6), [BallSpec(1, 2), BallSpec(9, 2)])),
    ("C5 r1", lambda: (cycle(5), [BallSpec(0, 1)])),
    ("pendant(5,3)", lambda: (cycle_with_pendant(5, 3), [BallSpec(0, 2)])),
)

STAR_CASES = (
    ("D4 M=4", lambda: (dumbbell(4), [BallSpec(2, 1), BallSpec(6, 1)], 4)),
    ("C3 M=4", lambda: (cycle(3), [BallSpec(0, 1)], 4)),
    ("D6 r2 M=4", lambda: (dumbbell(6), [BallSpec(1, 2), BallSpec(9, 2)], 4)),
    ("pendant(5,3) M=6", lambda: (cycle_with_pendant(5, 3), [BallSpec(0, 2)], 6)),
)


def collapse_checks() -> list[tuple[dict, bool, dict]]:
    out = []
    for name, mk in COLLAPSE_CASES:
        G1, balls = mk()
        col = collapse_balls(G1, balls)
        r = qi_constants(G1, col.graph, col.f)
        K = col.K
        ok = r.embedding_ok and r.beta_at(K) <= 2 * K and r.epsilon == 0
        out.append(({"case": name, "K": K}, ok, {"beta_at_K": num(r.beta_at(K)), "epsilon": num(r.epsilon)}))
    return out


def star_checks() -> list[tuple[dict, bool, dict]]:
    out = []
    for name, mk in STAR_CASES:
        G1, balls, M = mk()
        sp = product_star(G1, balls, M)
        r = qi_constants(sp.product, sp.graph, sp.F)
        a = 4 * sp.K + M + 1
        ok = r.embedding_ok and r.beta_at(a) <= 4 * sp.K + M
        out.append(({"case": name, "K": sp.K, "M": M}, ok, {"beta_at_alpha": num(r.beta_at(a)), "epsilon": num(r.epsilon)}))
    return out


def _check_mregular() -> TheoremReport:
    D6 = dumbbell(6)
    balls = [BallSpec(2, 1), BallSpec(8, 1)]
    checks = [
        ({"M": 4}, is_M_regular(D6, balls, 4).ok, {}),
        ({"M": 3}, not is_M_regular(D6, balls, 3).ok, {}),
        ({"M": "inf"}, is_M_regular(D6, balls, INF).ok, {}),
    ]
    return _bool_report("def:M-regular", checks)


def _check_half_diameter(budget, jobs) -> TheoremReport:
    rep = TheoremReport("t:diameter1")
    for name, G in corpus():
        from .hyperbolicity import delta_upper_diam

        hi = Fraction(int(delta_upper_diam(G)), UNIT)
        rep.instances.append(_range_instance({"graph": name}, _delta(G, budget, jobs), Fraction(0), hi))
    return rep


def _check_rbipartite() -> TheoremReport:
    checks = []
    for name, G1, G2 in (("P4,C6", path(4), cycle(6)), ("tree8,P3", random_tree(8, 1), path(3)), ("C4,P5", cycle(4), path(5))):
        P, _ = direct_product(G1, G2)
        comps = components(P)
        ok = len(comps) == 2
        if is_bipartite(G1) is not None:
            ok &= diam_continuous(G1) == diam_vertices(G1)
        for c in comps:
            sub, _ = induced_subgraph(P, c)
            ok &= is_bipartite(sub) is not None and diam_continuous(sub) == diam_vertices(sub)
        checks.append(({"pair": name}, ok, {"components": len(comps)}))
    return _bool_report("r:bipartite", checks)


def _check_rpath(budget, jobs) -> TheoremReport:
    checks = []
    deltas = {}
    for m in range(2, 7):
        for n in range(2, m + 1):
            P, idx = direct_product(path(m), path(n))
            DP = hop_matrix(P)
            ok = len(components(P)) == 2
            for a in range(P.n):
                for b in range(P.n):
                    if DP[a, b] >= 0:
                        (u, v), (u2, v2) = idx.backward(a), idx.backward(b)
                        ok &= DP[a, b] == max(abs(u - u2), abs(v - v2))
            for c in components(P):
                sub, _ = induced_subgraph(P, c)
                ok &= diam_continuous(sub) == diam_vertices(sub) == (m - 1) * UNIT
            deltas[(m, n)] = delta_exact(P, budget, jobs=jobs).fraction
            for (m1, n1), d1 in deltas.items():
                if m1 <= m and n1 <= n:
                    ok &= d1 <= deltas[(m, n)]
            checks.append(({"m": m, "n": n}, ok, {}))
    return _bool_report("r:path", checks)


def _check_lpath() -> TheoremReport:
    checks = []
    for m, n in ((5, 3), (6, 4), (7, 4)):
        P, idx = direct_product(path(m), path(n))
        D = hop_matrix(P)
        ok = True
        for a in range(P.n):
            for b in range(a + 1, P.n):
                if D[a, b] <= n - 1:
                    continue  # only long geodesics can violate the claim
                for g in enumerate_geodesics(P, a, b, 10_000):
                    firsts = [idx.pi1(x) for x in g]
                    ok &= len(set(firsts)) == len(firsts)
        checks.append(({"m": m, "n": n}, ok, {}))
    return _bool_report("l:path", checks)


def _check_cmxpn_distance() -> TheoremReport:
    checks = []
    for m in (3, 5, 7):
        for n in (2, 4, 7):
            P, idx = direct_product(cycle(m), path(n))
            D = hop_matrix(P)
            ok = True
            for a in range(P.n):
                for b in range(P.n):
                    (j, i), (r, s) = idx.backward(a), idx.backward(b)
                    ok &= D[a, b] == cmxpn_distance(m, n, (j + 1, i + 1), (r + 1, s + 1))
            checks.append(({"m": m, "n": n}, ok, {}))
    return _bool_report("t:CmxPn:distance", checks)


# ---------------------------------------------------------------------------
# registry and the verify driver

CMXPN_GRID = [(m, list(range(2, 13))) for m in (3, 5)] + [(7, [2, 8])]
PATH_PAIRS = [(m, n) for m in range(2, 8) for n in range(2, m + 1)] + [(7, 5)]
BIPARTITE_PAIRS = (
    ("P5,P4", lambda: (path(5), path(4))),
    ("C6,C6", lambda: (cycle(6), cycle(6))),
    ("P9,P2", lambda: (path(9), path(2))),
    ("tree(7,1),tree(8,1)", lambda: (random_tree(7, 1), random_tree(8, 1))),
    ("tree(8,0),tree(9,5)", lambda: (random_tree(8, 0), random_tree(9, 5))),
)


def _cmxpn(budget, jobs) -> TheoremReport:
    rep = TheoremReport("t:CmxPn")
    for m, ns in CMXPN_GRID:
        rep.instances += report_cmxpn([m], ns, budget, jobs).instances
    return rep


def _pmxpn(budget, jobs) -> TheoremReport:
    rep = TheoremReport("t:path")
    for m, n in sorted(set(PATH_PAIRS)):
        rep.instances += report_pmxpn([m], [n], budget, jobs).instances
    return rep


def _bipartite(budget, jobs) -> TheoremReport:
    return report_bipartite([(name, *mk()) for name, mk in BIPARTITE_PAIRS], budget, jobs)


def _plain(fn: Callable[[], TheoremReport]) -> Callable[[Budget | None, int], TheoremReport]:
    return lambda budget, jobs: fn()


def _named(tid: str, fn: Callable[[], list]) -> Callable[[Budget | None, int], TheoremReport]:
    return lambda budget, jobs: _bool_report(tid, fn())


REGISTRY: dict[str, Callable[[Budget | None, int], TheoremReport]] = {
    "def:delta": _plain(_check_components_def),
    "def:diam": _plain(_check_diam),
    "p:5.7": _plain(_check_parity_walks),
    "p:5.8": _plain(_check_parity_vs_bfs),
    "c:lower": _plain(_check_lower),
    "t:5.9": _plain(_check_weichsel),
    "c:5.10": _plain(_check_component_count),
    "p:unbounded": _plain(lambda: report_unbounded_growth([5, 7, 9])),
    "l:vertices": _plain(_check_lvertices),
    "t:G2odd": _named("t:G2odd", g2odd_checks),
    "t:no-odd": _named("t:no-odd", no_odd_checks),
    "l:P2": _named("l:P2", lp2_checks),
    "l:subgraph": _check_subgraph,
    "def:minimal": _plain(_check_reduction),
    "l:oddcycle": _check_oddcycle,
    "r:geodesic": _plain(_check_geodesic_lift),
    "l:dc": _plain(_check_dc),
    "c:dc": _plain(_check_cdc),
    "t:2.5": _check_finer_corners,
    "t:2.6": _check_quarter_multiple,
    "t:2.7": _check_witness_realised,
    "t:main2": _check_vertex_sandwich,
    "t:P2": lambda budget, jobs: report_p2_growth([4, 8, 16], budget, jobs),
    "l:dense": _plain(_check_dense),
    "t:dense": _plain(_check_tdense),
    "l:1": _named("l:1", collapse_checks),
    "def:M-regular": _plain(_check_mregular),
    "l:2": _named("l:2", star_checks),
    "t:diameter1": _check_half_diameter,
    "r:bipartite": _plain(_check_rbipartite),
    "r:path": _check_rpath,
    "l:path": _plain(_check_lpath),
    "t:path": _pmxpn,
    "t:bipartite": _bipartite,
    "t:CmxPn": _cmxpn,
    "t:CmxPn:distance": _plain(_check_cmxpn_distance),
}


@dataclass
class Summary:
    reports: list[TheoremReport]
    golden_mismatch: list[str] = field(default_factory=list)

    @property
    def failed(self) -> list[str]:
        return [r.theorem for r in self.reports if r.status == FAIL] + self.golden_mismatch

    @property
    def indeterminate(self) -> list[str]:
        return [r.theorem for r in self.reports if r.status == INDET]

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.indeterminate:
            return INDET_EXIT
        return 0


def verify_all(
    budget: Budget | None = None,
    jobs: int = 1,
    only: Sequence[str] | None = None,
    golden_dir: str | Path | None = None,
    write_golden: bool = False,
) -> Summary:
    ids = list(REGISTRY) if not only else list(only)
    for t in ids:
        if t not in REGISTRY:
            raise KeyError(f"unknown theorem id {t!r}")
    reps = [REGISTRY[t](budget, jobs) for t in ids]
    summary = Summary(reps)
    if golden_dir is not None:
        gdir = Path(golden_dir)
        for r in reps:
            f = gdir / (r.theorem.replace(":", "_") + ".json")
            text = r.dumps() + "\n"
            if write_golden:
                gdir.mkdir(parents=True, exist_ok=True)
                f.write_text(text, encoding="utf-8")
            elif not f.exists() or f.read_text(encoding="utf-8") != text:
                summary.golden_mismatch.append(r.theorem)
    return summary
