import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from gromovprod.families import complete, cycle, path, random_graph, random_tree
from gromovprod.graph_core import INF, bfs_hops, hop_matrix, is_bipartite
from gromovprod.parity_metric import (
    BadCoordinate,
    cmxpn_distance,
    lower_bound_gap,
    pair_distance,
    parity_distances,
    parity_table,
    product_distance,
    walk_of_length,
)
from gromovprod.products import direct_product


def _brute_parity(G, s, limit):
    """Shortest even/odd walk lengths by expanding reachable sets step by step."""
    even = [INF] * G.n
    odd = [INF] * G.n
    frontier = {s}
    even[s] = 0
    for L in range(1, limit + 1):
        frontier = {w for u in frontier for w in G.adjacency[u]}
        target = odd if L % 2 else even
        for v in frontier:
            target[v] = min(target[v], L)
    return even, odd


def test_c5_examples():
    r = parity_distances(cycle(5), 0)
    assert (r.odd[1], r.even[1]) == (1, 4)
    assert (r.even[2], r.odd[2]) == (2, 3)


def test_p3_example():
    r = parity_distances(path(3), 0)
    assert r.even == (0, INF, 2)
    assert r.odd == (INF, 1, INF)


def test_k3_example():
    r = parity_distances(complete(3), 0)
    assert r.even[0] == 0 and r.odd[0] == 3


@given(graphs(max_n=8))
def test_parity_matches_brute_force(G):
    for s in range(G.n):
        even, odd = _brute_parity(G, s, 2 * G.n + 2)
        r = parity_distances(G, s)
        assert list(r.even) == even
        assert list(r.odd) == odd


@given(graphs(max_n=8))
def test_parity_invariants(G):
    D = hop_matrix(G)
    bip = is_bipartite(G) is not None
    for r in parity_table(G):
        assert r.even[r.source] == 0
        for v in range(G.n):
            d = D[r.source, v]
            if d < 0:
                assert r.even[v] == r.odd[v] == INF
                continue
            right, wrong = (r.even[v], r.odd[v]) if d % 2 == 0 else (r.odd[v], r.even[v])
            assert right == d
            if bip:
                assert wrong == INF


def test_product_distance_examples():
    G1, G2 = cycle(5), path(3)
    a = parity_distances(G1, 0)
    b = parity_distances(G2, 0)
    assert product_distance(a.entry(1), b.entry(0)) == 4
    assert product_distance(a.entry(2), b.entry(2)) == 2
    p = parity_distances(path(3), 0)
    assert product_distance(p.entry(0), p.entry(1)) == INF


def test_lower_bound_gap_examples():
    assert lower_bound_gap(cycle(5), path(3), ((0, 0), (1, 0))) == (4, 1)
    assert lower_bound_gap(cycle(5), path(3), ((2, 1), (2, 1))) == (0, 0)
    d, m = lower_bound_gap(cycle(7), path(5), ((0, 0), (2, 4)))
    assert d == m == 4


@given(graphs(max_n=6), graphs(max_n=6), st.data())
def test_pair_distance_matches_bfs(G1, G2, data):
    P, idx = direct_product(G1, G2)
    a = data.draw(st.integers(0, P.n - 1))
    row = bfs_hops(P, a)
    for b in range(P.n):
        want = INF if row[b] < 0 else row[b]
        assert pair_distance(G1, G2, idx.backward(a), idx.backward(b)) == want


@given(graphs(max_n=6), graphs(max_n=6), st.data())
def test_gap_nonnegative_and_zero_on_same_parity(G1, G2, data):
    u, u2 = data.draw(st.integers(0, G1.n - 1)), data.draw(st.integers(0, G1.n - 1))
    v, v2 = data.draw(st.integers(0, G2.n - 1)), data.draw(st.integers(0, G2.n - 1))
    d, m = lower_bound_gap(G1, G2, ((u, v), (u2, v2)))
    if d == INF:
        return
    assert d >= m
    d1, d2 = bfs_hops(G1, u)[u2], bfs_hops(G2, v)[v2]
    if d1 >= 0 and d2 >= 0 and d1 % 2 == d2 % 2 and (u, v) != (u2, v2):
        if G1.adjacency[u] and G2.adjacency[v]:
            assert d == m


def test_two_hundred_random_pairs():
    rng = random.Random(7)
    mismatches = 0
    for t in range(20):
        G1 = random_graph(rng.randint(2, 12), 0.35, t) if t % 2 else random_tree(rng.randint(2, 12), t)
        G2 = cycle(rng.randint(3, 12)) if t % 3 else random_graph(rng.randint(2, 12), 0.4, 100 + t)
        P, idx = direct_product(G1, G2)
        for _ in range(10):
            a, b = rng.randrange(P.n), rng.randrange(P.n)
            h = bfs_hops(P, a)[b]
            mismatches += pair_distance(G1, G2, idx.backward(a), idx.backward(b)) != (INF if h < 0 else h)
    assert mismatches == 0


def test_cmxpn_examples():
    assert cmxpn_distance(5, 4, (1, 1), (2, 2)) == 1
    assert cmxpn_distance(5, 4, (1, 1), (2, 1)) == 4
    assert cmxpn_distance(3, 2, (1, 1), (1, 2)) == 3


def test_cmxpn_errors():
    with pytest.raises(BadCoordinate):
        cmxpn_distance(4, 3, (1, 1), (1, 1))
    with pytest.raises(BadCoordinate):
        cmxpn_distance(5, 3, (6, 1), (1, 1))
    with pytest.raises(BadCoordinate):
        cmxpn_distance(5, 3, (1, 0), (1, 1))
    with pytest.raises(BadCoordinate):
        cmxpn_distance(5, 1, (1, 1), (2, 1))


@pytest.mark.parametrize("m", [3, 5, 7])
@pytest.mark.parametrize("n", range(2, 10))
def test_cmxpn_matches_bfs(m, n):
    P, idx = direct_product(cycle(m), path(n))
    D = hop_matrix(P)
    for a, b in itertools.product(range(P.n), repeat=2):
        (j, i), (r, s) = idx.backward(a), idx.backward(b)
        assert D[a, b] == cmxpn_distance(m, n, (j + 1, i + 1), (r + 1, s + 1))


@given(graphs(min_n=2, max_n=7), st.data())
def test_parity_padding(G, data):
    u = data.draw(st.integers(0, G.n - 1))
    r = parity_distances(G, u)
    for v in range(G.n):
        for L in (r.even[v], r.odd[v]):
            if L == INF or not G.adjacency[v]:
                continue
            w = walk_of_length(G, u, v, int(L) + 2)
            assert w is not None and len(w) == L + 3 and w[0] == u and w[-1] == v
            assert all(G.has_edge(a, b) for a, b in zip(w, w[1:]))
