import pytest

from gromovprod.families import (
    BadParameter,
    FamilySpec,
    corpus,
    cycle,
    cycle_with_pendant,
    dumbbell,
    edge_list_bytes,
    generate,
    path,
)
from gromovprod.graph_core import INF, components, is_bipartite
from gromovprod.odd_cycles import odd_girth


def test_examples():
    assert generate(FamilySpec("path", {"m": 2})).edges() == [(0, 1)]
    assert generate(FamilySpec("cycle", {"m": 5})) == cycle(5)
    D = generate(FamilySpec("dumbbell", {"bridge": 6}))
    assert D.n == 11 and D.num_edges == 12
    assert {(0, 1), (1, 2), (0, 2), (8, 9), (9, 10), (8, 10)} <= set(D.edges())
    assert all(D.has_edge(i, i + 1) for i in range(2, 8))


def test_pendant_numbering():
    G = cycle_with_pendant(3, 4)
    assert G.n == 7 and G.has_edge(0, 3) and G.has_edge(5, 6)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("path", {"m": 0}),
        FamilySpec("cycle", {"m": 2}),
        FamilySpec("dumbbell", {"bridge": 0}),
        FamilySpec("nope", {}),
        FamilySpec("path", {"k": 3}),
        FamilySpec("random_graph", {"n": 4, "p": 1.5}),
    ],
)
def test_bad_parameters(spec):
    with pytest.raises(BadParameter):
        generate(spec)


def test_determinism():
    for kind, params in [("tree", {"n": 12, "seed": 4}), ("random_graph", {"n": 10, "p": 0.4, "seed": 9})]:
        s = FamilySpec(kind, params)
        assert edge_list_bytes(s) == edge_list_bytes(FamilySpec(kind, dict(params)))
    assert FamilySpec("tree", {"seed": 1, "n": 3}).name() == "tree(n=3,seed=1)"


def test_family_properties():
    for m in (3, 5, 7, 9):
        assert odd_girth(cycle(m)) == m
    for m in range(1, 8):
        assert is_bipartite(path(m)) is not None
    for n in range(1, 12):
        T = generate(FamilySpec("tree", {"n": n, "seed": n}))
        assert is_bipartite(T) is not None and len(components(T)) == 1 and T.num_edges == n - 1
    assert odd_girth(dumbbell(3)) == 3
    assert odd_girth(path(3)) == INF


def test_corpus():
    names = [n for n, _ in corpus()]
    assert len(names) == len(set(names))
    assert all(G.n <= 12 for _, G in corpus())
