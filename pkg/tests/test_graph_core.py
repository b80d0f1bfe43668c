import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from gromovprod.families import complete, cycle, path
from gromovprod.graph_core import (
    INF,
    UNIT,
    BadId,
    DuplicateEdge,
    GraphError,
    LoopEdge,
    Point,
    apsp,
    build_graph,
    components,
    diam_continuous,
    diam_vertices,
    format_edge_list,
    hop_matrix,
    induced_subgraph,
    is_bipartite,
    parse_edge_list,
    point_distance,
    read_edge_list,
    subdivide,
    to_fraction,
    write_edge_list,
)


def test_build_triangle():
    G = build_graph([(0, 1), (1, 2), (2, 0)], 3)
    assert G.n == 3
    assert G.adjacency == ((1, 2), (0, 2), (0, 1))
    assert G.num_edges == 3


def test_build_errors():
    with pytest.raises(DuplicateEdge):
        build_graph([(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdge):
        build_graph([(0, 1), (1, 0)])
    with pytest.raises(LoopEdge):
        build_graph([(0, 0)])
    with pytest.raises(BadId):
        build_graph([(0, 3)], 3)
    with pytest.raises(BadId):
        build_graph([(-1, 0)], 3)


def test_apsp_examples():
    assert apsp(cycle(5))[0, 2] == 32
    assert apsp(path(4))[0, 3] == 48
    two = build_graph([(0, 1), (2, 3)], 4)
    assert apsp(two)[0, 2] == INF


def test_subdivide_examples():
    H, pts = subdivide(path(2), 2)
    assert H.n == 3 and H.num_edges == 2
    assert pts[2] == Point.midpoint(0, 1)
    H, _ = subdivide(cycle(3), 2)
    assert H.n == 6 and all(H.degree(v) == 2 for v in range(6))
    assert len(components(H)) == 1


def test_subdivide_quarter_c5():
    G = cycle(5)
    H, pts = subdivide(G, 4)
    mid = pts.index(Point.midpoint(0, 1))
    # the midpoint of (0,1) is 5/2 edges from vertex 3, i.e. 10 quarter-edges
    assert hop_matrix(H)[mid, 3] == 10
    assert point_distance(Point.midpoint(0, 1), Point.vertex(3), apsp(G)) == 40


def test_subdivide_bad_factor():
    with pytest.raises(GraphError):
        subdivide(cycle(3), 3)


def test_diameters():
    assert diam_vertices(cycle(5)) == 32
    assert diam_continuous(cycle(5)) == 40
    assert diam_vertices(path(4)) == diam_continuous(path(4)) == 48
    assert diam_vertices(cycle(6)) == diam_continuous(cycle(6)) == 48
    assert diam_vertices(build_graph([(0, 1), (2, 3)], 4)) == INF


def test_bipartite_and_components():
    assert is_bipartite(cycle(6)) == ([0, 2, 4], [1, 3, 5])
    assert is_bipartite(cycle(5)) is None
    G = build_graph([(0, 1), (1, 2), (3, 4)], 5)
    assert components(G) == [[0, 1, 2], [3, 4]]


def test_point_normalization():
    assert Point.on_edge(3, 1, 4) == Point.on_edge(1, 3, 12)
    assert Point.on_edge(1, 3, 0) == Point.vertex(1)
    assert Point.on_edge(1, 3, UNIT) == Point.vertex(3)
    with pytest.raises(GraphError):
        Point.on_edge(0, 2, 4).check(path(3))


def test_point_distance_same_edge():
    D = apsp(cycle(3))
    assert point_distance(Point.on_edge(0, 1, 2), Point.on_edge(0, 1, 14), D) == 12
    # going around the other way is longer: 2 + 16 + 2 = 20
    assert point_distance(Point.on_edge(0, 1, 2), Point.on_edge(0, 2, 2), D) == 4


def test_to_fraction():
    assert to_fraction(40) == Fraction(5, 2)
    assert to_fraction(INF) == INF


def test_edge_list_round_trip(tmp_path):
    text = "# comment\nn 5\n0 1\n\n1 2\n"
    G = parse_edge_list(text)
    assert G.n == 5 and G.num_edges == 2
    assert parse_edge_list(format_edge_list(G)) == G
    f = tmp_path / "g.edges"
    write_edge_list(G, f)
    assert read_edge_list(f) == G
    assert parse_edge_list("0 3\n").n == 4
    with pytest.raises(GraphError):
        parse_edge_list("0 1 2\n")


def test_induced_subgraph():
    sub, keep = induced_subgraph(cycle(5), [4, 0, 1])
    assert keep == [0, 1, 4]
    assert sorted(sub.edges()) == [(0, 1), (0, 2)]


@given(graphs(max_n=10))
def test_apsp_matches_networkx(G):
    ref = nx.Graph()
    ref.add_nodes_from(range(G.n))
    ref.add_edges_from(G.edges())
    D = apsp(G)
    lengths = dict(nx.all_pairs_shortest_path_length(ref))
    for u in range(G.n):
        for v in range(G.n):
            want = lengths[u].get(v)
            assert D[u, v] == (INF if want is None else want * UNIT)


@given(graphs(max_n=9))
def test_apsp_metric_axioms(G):
    D = apsp(G)
    assert np.array_equal(D, D.T)
    assert (np.diag(D) == 0).all()
    for k in range(G.n):
        assert (D <= D[:, [k]] + D[[k], :]).all()


@given(graphs(max_n=7))
def test_subdivision_scales_distances(G):
    D = hop_matrix(G)
    for k in (2, 4, 8):
        H, _ = subdivide(G, k)
        DH = hop_matrix(H)[: G.n, : G.n]
        assert np.array_equal(np.where(D < 0, -1, D * k), DH)


@given(graphs(max_n=9, connected=True))
def test_diameter_gap(G):
    gap = diam_continuous(G) - diam_vertices(G)
    assert gap in (0, 8, 16)
    if is_bipartite(G) is not None:
        assert gap == 0


def test_complete_diameter():
    # K4: midpoints of disjoint edges are 1/2 + 1 + 1/2 apart
    assert diam_continuous(complete(4)) == 32
    assert math.isinf(diam_continuous(build_graph([], 2)))
