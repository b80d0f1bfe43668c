"""Acceptance suite: one test per criterion, each recorded for the end-of-run summary."""
from fractions import Fraction

import networkx as nx

from conftest import ACCEPTANCE
from gromovprod.brute import brute_delta
from gromovprod.families import corpus, cycle, cycle_with_pendant, dumbbell, path, random_tree
from gromovprod.graph_core import UNIT, components, diam_continuous, diam_vertices, hop_matrix, induced_subgraph, is_bipartite
from gromovprod.hyperbolicity import delta_exact, delta_vertex, thin_constant
from gromovprod.odd_cycles import minimal_cycles
from gromovprod.products import direct_product, predict_component_count
from gromovprod.reports import (
    collapse_checks,
    component_count_checks,
    dc_checks,
    g2odd_checks,
    lp2_checks,
    no_odd_checks,
    prop58_mismatches,
    star_checks,
    unbounded_triangle,
)

F = Fraction


def record(k, name, failures):
    ACCEPTANCE[k] = (name, not failures)
    assert not failures, failures


def exact_delta(G):
    r = delta_exact(G)
    assert r.exact
    return r.fraction


# closed form for delta(C_m x P_n), written out independently of the library
def cmxpn_table(m, n):
    if n <= m + 1:
        return F(m, 2)
    if n <= 2 * m:
        return F(n - 1, 2)
    return F(2 * m - 1, 2)


def test_criterion_01_cycle_times_path_table():
    spot = {(3, 2): F(3, 2), (3, 6): F(5, 2), (3, 8): F(5, 2), (5, 4): F(5, 2), (5, 9): F(4), (5, 12): F(9, 2)}
    grid = [(m, n) for m in (3, 5) for n in range(2, 13)] + [(7, 2), (7, 8)]
    bad = []
    for m, n in grid:
        P, _ = direct_product(cycle(m), path(n))
        got = exact_delta(P)
        want = cmxpn_table(m, n)
        if (m, n) in spot and spot[(m, n)] != want:
            bad.append(("table", m, n, want))
        if got != want:
            bad.append((m, n, got, want))
    record(1, "delta(Cm x Pn) matches the closed form", bad)


def test_criterion_02_path_times_path():
    bad = []
    for m in range(2, 10):
        P, _ = direct_product(path(m), path(2))
        if exact_delta(P) != 0:
            bad.append(("P2", m))
    for m, n in ((3, 3), (5, 4), (5, 5), (7, 5)):
        P, _ = direct_product(path(m), path(n))
        if exact_delta(P) != F(m - 1, 2):
            bad.append(("exact", m, n))
    for m in range(2, 8):
        for n in range(2, m + 1):
            P, _ = direct_product(path(m), path(n))
            d = exact_delta(P)
            if n == 2:
                lo = hi = F(0)
            elif m % 2 and m <= 2 * n - 3:
                lo = hi = F(m - 1, 2)
            else:
                lo = min(F(m, 2), F(n - 1)) - 1
                hi = min(F(m, 2), F(n)) - F(1, 2)
            if not lo <= d <= hi:
                bad.append(("bounds", m, n, d, lo, hi))
    record(2, "delta(Pm x Pn) values and bounds", bad)


def test_criterion_03_bipartite_products():
    bad = []
    pairs = [
        ("P5,P4", path(5), path(4)),
        ("C6,C6", cycle(6), cycle(6)),
        ("P9,P2", path(9), path(2)),
        ("trees a", random_tree(7, 1), random_tree(8, 1)),
        ("trees b", random_tree(8, 0), random_tree(9, 5)),
    ]
    equality = {"P5,P4", "trees a", "trees b"}
    for name, G1, G2 in pairs:
        k1, k2 = (int(diam_vertices(G) // UNIT) for G in (G1, G2))
        d1, d2 = exact_delta(G1), exact_delta(G2)
        if k1 < k2:
            k1, k2, d1, d2 = k2, k1, d2, d1
        P, _ = direct_product(G1, G2)
        d = exact_delta(P)
        lo = max(min(F(k1 - 1, 2), F(k2 - 1)), d1, d2)
        if not lo <= d <= F(k1, 2):
            bad.append(("bounds", name, d))
        if name in equality:
            # the even case needs k1 even and k1 <= 2 k2 - 2
            if k1 % 2 or k1 > 2 * k2 - 2 or d != F(k1, 2):
                bad.append(("equality", name, k1, k2, d))
    record(3, "bipartite product bounds and even equality case", bad)


def test_criterion_04_parity_formula_vs_bfs():
    bad, checked = prop58_mismatches(pairs=20, samples=10, seed=0)
    fails = [] if (bad == 0 and checked == 200) else [("mismatches", bad, "checked", checked)]
    record(4, "parity distance formula equals BFS on the product", fails)


def test_criterion_05_component_counts():
    checks = component_count_checks(30, seed=1)
    bad = [c for c in checks if not c[1]]
    if len(checks) != 30:
        bad.append(("count", len(checks)))
    # second opinion from networkx on the same kind of pairs
    for name, G in corpus()[:12]:
        if len(components(G)) != 1 or G.n < 2:
            continue
        H = cycle(5)
        P, _ = direct_product(G, H)
        nxg = nx.Graph(list(P.edges()))
        nxg.add_nodes_from(range(P.n))
        pred = predict_component_count([is_bipartite(G) is not None, False])
        if nx.number_connected_components(nxg) != pred:
            bad.append((name, "nx"))
    record(5, "component count of products of connected factors", bad)


def test_criterion_06_structural_invariants():
    bad = []
    for name, G in corpus():
        d = exact_delta(G)
        dv = delta_vertex(G)
        assert dv.exact
        dv = dv.fraction
        if (4 * d).denominator != 1:
            bad.append(("quarter", name, d))
        if not dv <= d <= 4 * dv + F(1, 2):
            bad.append(("sandwich", name, dv, d))
        half_diam = max(F(int(diam_continuous(induced_subgraph(G, c)[0])), 2 * UNIT) for c in components(G))
        if d > half_diam:
            bad.append(("diam", name, d, half_diam))
        if is_bipartite(G) is None:
            longest = max(c.length for c in minimal_cycles(G))
            if longest > 4 * d:
                bad.append(("cycle", name, longest, d))
    for m, n in ((3, 6), (5, 6), (5, 9)):
        big, idx = direct_product(cycle(m), path(n))
        dbig = exact_delta(big)
        Db = hop_matrix(big)
        for n2 in range(2, n):
            sub, keep = induced_subgraph(big, [idx.forward(i, j) for i in range(m) for j in range(n2)])
            if not (Db[keep][:, keep] == hop_matrix(sub)).all():
                bad.append(("not isometric", m, n, n2))
            if exact_delta(sub) > dbig:
                bad.append(("monotone", m, n, n2))
    record(6, "structural invariants on the corpus", bad)


def test_criterion_07_brute_force_oracle():
    bad = []
    seen = 0
    for name, G in corpus():
        if G.n > 8:
            continue
        seen += 1
        a = delta_exact(G, prune=True)
        b = delta_exact(G, prune=False)
        oracle = brute_delta(G)
        if not (a.exact and b.exact and a.fraction == b.fraction == oracle):
            bad.append((name, a.fraction, b.fraction, oracle))
        if a.witness != b.witness:
            bad.append((name, "witness"))
        if delta_vertex(G).fraction != brute_delta(G, corner_step=UNIT):
            bad.append((name, "vertex"))
    if seen < 20:
        bad.append(("too few graphs", seen))
    record(7, "engine agrees with the brute-force oracle", bad)


def test_criterion_08_qi_constructions():
    bad = []
    for label, checks in (
        ("g2odd", g2odd_checks()),
        ("no-odd", no_odd_checks()),
        ("lp2", lp2_checks()),
        ("collapse", collapse_checks()),
        ("star", star_checks()),
    ):
        if len(checks) < 3:
            bad.append((label, "fewer than 3 instances"))
        bad += [(label, c) for c in checks if not c[1]]
    record(8, "quasi-isometry construction bounds", bad)


def test_criterion_09_growth():
    bad = []
    P, T, _ = unbounded_triangle(9)
    t = thin_constant(P, T).fraction
    if t < 3:
        bad.append(("triangle", t))
    prev = None
    for L in (4, 8, 16):
        D = dumbbell(L)
        dD = exact_delta(D)
        prod, _ = direct_product(D, path(2))
        dP = exact_delta(prod)
        rhs = 2 * dP + 4 * dD
        if F(L, 2) > rhs * rhs:
            bad.append(("sqrt bound", L, dP, dD))
        if prev is not None and dP <= prev:
            bad.append(("growth", L, prev, dP))
        prev = dP
    record(9, "growth experiments", bad)


def test_criterion_10_distance_to_cycles_inequality():
    checks = dc_checks(max_len=8)
    names = {c[0]["graph"] for c in checks}
    bad = [c for c in checks if not c[1] or c[2]["checked"] == 0]
    if names != {"C5", "D6", "cycle_with_pendant(3,4)"}:
        bad.append(("graphs", names))
    record(10, "geodesic distance-to-cycles inequality", bad)
