"""Deterministic generators for the graph families used in the experiments.

Vertex numbering:

* ``path(m)``: ``0 - 1 - ... - m-1``.
* ``cycle(m)``: ``0 .. m-1`` around the ring.
* ``dumbbell(L)``: triangle ``{0, 1, 2}``, bridge ``2 .. 2+L``, triangle
  ``{2+L, 3+L, 4+L}``; the attachment vertices ``2`` and ``2+L`` lie on both a
  triangle and the bridge.
* ``cycle_with_pendant(c, t)``: cycle ``0 .. c-1`` and a tail ``0 - c - ... - c+t-1``.
* ``complete_bipartite(a, b)``: parts ``0..a-1`` and ``a..a+b-1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph_core import Graph, GraphError, build_graph, format_edge_list

__all__ = [
    "BadParameter",
    "FamilySpec",
    "generate",
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "random_tree",
    "dumbbell",
    "cycle_with_pendant",
    "random_graph",
    "KINDS",
    "corpus",
]


class BadParameter(GraphError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParameter(msg)


def path(m: int) -> Graph:
    _need(m >= 1, f"path needs m >= 1, got {m}")
    return build_graph([(i, i + 1) for i in range(m - 1)], m)


def cycle(m: int) -> Graph:
    _need(m >= 3, f"cycle needs m >= 3, got {m}")
    return build_graph([(i, (i + 1) % m) for i in range(m)], m)


def complete(n: int) -> Graph:
    _need(n >= 1, f"complete graph needs n >= 1, got {n}")
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def complete_bipartite(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "complete_bipartite needs a, b >= 1")
    return build_graph([(i, a + j) for i in range(a) for j in range(b)], a + b)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random recursive tree: vertex ``i`` hangs off a random earlier vertex."""
    _need(n >= 1, f"tree needs n >= 1, got {n}")
    rng = random.Random(seed)
    return build_graph([(rng.randrange(i), i) for i in range(1, n)], n)


def dumbbell(bridge: int) -> Graph:
    _need(bridge >= 1, f"dumbbell bridge must be >= 1, got {bridge}")
    L = bridge
    edges = [(0, 1), (1, 2), (0, 2)]
    edges += [(i, i + 1) for i in range(2, 2 + L)]
    edges += [(2 + L, 3 + L), (3 + L, 4 + L), (2 + L, 4 + L)]
    return build_graph(edges, L + 5)


def cycle_with_pendant(c: int, t: int) -> Graph:
    _need(c >= 3 and t >= 0, "cycle_with_pendant needs c >= 3, t >= 0")
    edges = [(i, (i + 1) % c) for i in range(c)]
    prev = 0
    for v in range(c, c + t):
        edges.append((prev, v))
        prev = v
    return build_graph(edges, c + t)


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) with edges drawn in lexicographic pair order."""
    _need(n >= 1 and 0.0 <= p <= 1.0, "random_graph needs n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(edges, n)


KINDS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "tree": random_tree,
    "dumbbell": dumbbell,
    "cycle_with_pendant": cycle_with_pendant,
    "random_graph": random_graph,
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def name(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({args})"


def generate(spec: FamilySpec) -> Graph:
    try:
        fn = KINDS[spec.kind]
    except KeyError:
        raise BadParameter(f"unknown family {spec.kind!r}") from None
    try:
        return fn(**spec.params)
    except TypeError as exc:
        raise BadParameter(f"{spec.kind}: {exc}") from None


def edge_list_bytes(spec: FamilySpec) -> bytes:
    return format_edge_list(generate(spec)).encode("utf-8")


def corpus() -> list[tuple[str, Graph]]:
    """The fixed graph corpus used by the invariant and oracle suites (all n <= 12)."""
    specs = [FamilySpec("path", {"m": m}) for m in range(1, 10)]
    specs += [FamilySpec("cycle", {"m": m}) for m in range(3, 11)]
    specs += [FamilySpec("dumbbell", {"bridge": L}) for L in range(1, 8)]
    specs += [FamilySpec("complete", {"n": n}) for n in range(2, 6)]
    specs += [FamilySpec("complete_bipartite", {"a": 2, "b": 3})]
    specs += [FamilySpec("cycle_with_pendant", {"c": c, "t": t}) for c, t in ((3, 4), (5, 2), (7, 3))]
    specs += [FamilySpec("tree", {"n": n, "seed": s}) for n, s in ((8, 1), (10, 2), (12, 3))]
    specs += [
        FamilySpec("random_graph", {"n": n, "p": p, "seed": s})
        for n in (6, 7, 8, 10, 12)
        for p in (0.3, 0.5)
        for s in (0, 1)
    ]
    return [(s.name(), generate(s)) for s in specs]
