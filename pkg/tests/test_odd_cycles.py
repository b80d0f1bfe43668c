
import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from gromovprod.families import complete, cycle, dumbbell, path
from gromovprod.graph_core import INF, UNIT, build_graph, hop_matrix
from gromovprod.hyperbolicity import delta_exact
from gromovprod.odd_cycles import (
    BadCycle,
    EvenCycle,
    canonical_cycle,
    certify,
    check_cycle,
    default_lmax,
    dist_to_minimal_cycles,
    find_shortcut,
    is_isometric_cycle,
    minimal_cycles,
    odd_girth,
    reduce_cycle,
    reduce_to_minimal,
)

C5_CHORD = build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)], 5)


def _nx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def _all_isometric_odd_cycles(G, lmax):
    """Independent oracle: every simple cycle from networkx, filtered by isometry."""
    D = hop_matrix(G)
    out = set()
    for c in nx.simple_cycles(_nx(G), length_bound=lmax):
        if len(c) >= 3 and len(c) % 2 == 1:
            L = len(c)
            ok = all(D[c[i], c[j]] == min(j - i, L - j + i) for i in range(L) for j in range(i + 1, L))
            if ok:
                out.add(canonical_cycle(c))
    return out


def test_odd_girth_examples():
    assert odd_girth(cycle(5)) == 5
    assert odd_girth(path(6)) == INF
    assert odd_girth(complete(4)) == 3


def test_isometric_examples():
    assert is_isometric_cycle(cycle(5), [0, 1, 2, 3, 4])
    assert not is_isometric_cycle(C5_CHORD, [0, 1, 2, 3, 4])
    assert is_isometric_cycle(C5_CHORD, [0, 1, 2])


def test_bad_cycles():
    with pytest.raises(BadCycle):
        check_cycle(cycle(5), [0, 1, 3])
    with pytest.raises(BadCycle):
        check_cycle(cycle(5), [0, 1])
    with pytest.raises(BadCycle):
        check_cycle(cycle(5), [0, 1, 2, 1])
    with pytest.raises(EvenCycle):
        reduce_cycle(cycle(6), list(range(6)))


def test_reduce_examples():
    assert reduce_cycle(cycle(5), [0, 1, 2, 3, 4]) is None
    red = reduce_cycle(C5_CHORD, [0, 1, 2, 3, 4])
    assert sorted(red.cycle) == [0, 1, 2]
    assert red.shortcut == (0, 2)
    assert reduce_cycle(complete(4), [0, 1, 2]) is None


def test_certificate():
    cert = certify(C5_CHORD, [0, 1, 2, 3, 4])
    assert cert.odd and not cert.isometric and not cert.minimal
    assert cert.to_json()["reduction"]["cycle"] == list(cert.reduction.cycle)
    assert certify(cycle(5), range(5)).minimal
    assert not certify(cycle(6), range(6)).minimal


def test_minimal_cycles_examples():
    assert [c.vertices for c in minimal_cycles(cycle(5))] == [(0, 1, 2, 3, 4)]
    assert [c.vertices for c in minimal_cycles(dumbbell(6))] == [(0, 1, 2), (8, 9, 10)]
    assert minimal_cycles(cycle(6)) == []


def test_distance_examples():
    assert dist_to_minimal_cycles(cycle(5)) == [0] * 5
    d = dist_to_minimal_cycles(dumbbell(6))
    assert d[5] == 3 * UNIT
    assert dist_to_minimal_cycles(path(5)) == [INF] * 5


def test_default_lmax():
    assert default_lmax(cycle(7)) == 7
    assert default_lmax(path(2)) == 3


def test_canonical_cycle():
    assert canonical_cycle([3, 4, 0, 1, 2]) == (0, 1, 2, 3, 4)
    assert canonical_cycle([2, 1, 0, 4, 3]) == (0, 1, 2, 3, 4)


@given(graphs(min_n=3, max_n=8))
def test_minimal_cycles_match_oracle(G):
    lmax = default_lmax(G)
    got = {c.vertices for c in minimal_cycles(G, lmax)}
    assert got == _all_isometric_odd_cycles(G, lmax)


@given(graphs(min_n=3, max_n=8))
def test_lmax_bound_is_complete(G):
    # nothing isometric and odd hides above the default bound
    lmax = default_lmax(G)
    assert _all_isometric_odd_cycles(G, G.n) == _all_isometric_odd_cycles(G, lmax)


@given(graphs(min_n=3, max_n=8), st.data())
def test_reduction_chain(G, data):
    cycles = [c for c in nx.simple_cycles(_nx(G), length_bound=G.n) if len(c) % 2 == 1 and len(c) >= 3]
    if not cycles:
        return
    C = data.draw(st.sampled_from(cycles))
    red = reduce_cycle(G, C)
    assert (red is None) == is_isometric_cycle(G, C)
    if red is not None:
        g = red.shortcut
        assert set(g) & set(C) == {g[0], g[-1]}
        L = len(C)
        i, j = C.index(g[0]), C.index(g[-1])
        assert len(g) - 1 < min(abs(i - j), L - abs(i - j))
        assert red.length % 2 == 1 and red.length <= L - 2
        check_cycle(G, red.cycle)
    chain = reduce_to_minimal(G, C)
    assert all(b and len(b) < len(a) for a, b in zip(chain, chain[1:]))
    assert is_isometric_cycle(G, chain[-1])
    assert find_shortcut(G, chain[-1]) is None


@given(graphs(min_n=3, max_n=8))
def test_minimal_cycle_length_at_most_four_delta(G):
    cycles = minimal_cycles(G)
    if cycles:
        d = delta_exact(G).fraction
        assert all(c.length <= 4 * d for c in cycles)


@given(graphs(min_n=3, max_n=9))
def test_odd_girth_is_shortest_minimal_cycle(G):
    cycles = minimal_cycles(G)
    g = odd_girth(G)
    if g == INF:
        assert cycles == []
    else:
        assert min(c.length for c in cycles) == g


def test_distance_field_matches_bfs_from_cycles():
    G = dumbbell(5)
    cyc = {v for c in minimal_cycles(G) for v in c.vertices}
    D = hop_matrix(G)
    for v, d in enumerate(dist_to_minimal_cycles(G)):
        assert d == UNIT * min(D[v, c] for c in cyc)
