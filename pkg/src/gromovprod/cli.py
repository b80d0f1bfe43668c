"""Command-line interface: ``gromovprod <subcommand> ...``.

Numbers are printed as exact rationals ``{"num": .., "den": ..}``; ``null``
stands for infinity.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import reports
from .families import KINDS, BadParameter, FamilySpec, generate
from .graph_core import INF, UNIT, GraphError, format_edge_list, read_edge_list
from .hyperbolicity import Budget, delta_exact, delta_vertex
from .odd_cycles import default_lmax, dist_to_minimal_cycles, minimal_cycles, odd_girth
from .parity_metric import pair_distance, parity_distances
from .products import direct_product
from .qi_toolkit import (
    BallSpec,
    check_lemma_dc,
    collapse_balls,
    dense_embedding,
    g2odd_embedding,
    lift_gamma,
    lp2_inclusion,
    no_odd_embedding,
    product_star,
    qi_constants,
    swap_layers,
)

num = reports.num


def _emit(args, obj, tsv_rows=None) -> None:
    if args.format == "tsv" and tsv_rows is not None:
        for row in tsv_rows:
            print("\t".join(str(x) for x in row))
    else:
        print(json.dumps(obj, sort_keys=True, indent=1))


def _budget(args) -> Budget:
    return Budget() if args.budget is None else Budget(triangles=args.budget)


def _pair(text: str) -> tuple[int, int]:
    a, b = text.split(",")
    return int(a), int(b)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _ball(text: str) -> BallSpec:
    c, r = text.split(":")
    return BallSpec(int(c), int(r))


def _param(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    params = {}
    for item in args.params:
        if "=" not in item:
            raise BadParameter(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        params[k] = _param(v)
    fn = KINDS.get(args.kind)
    if fn is not None and "seed" in inspect.signature(fn).parameters and "seed" not in params:
        params["seed"] = args.seed
    text = format_edge_list(generate(FamilySpec(args.kind, params)))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_product(args) -> int:
    G1, G2 = read_edge_list(args.g1), read_edge_list(args.g2)
    P, idx = direct_product(G1, G2)
    text = format_edge_list(P)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.index:
        Path(args.index).write_text(json.dumps(idx.to_json(), sort_keys=True) + "\n", encoding="utf-8")
    return 0


def cmd_distance(args) -> int:
    G1, G2 = read_edge_list(args.factor1), read_edge_list(args.factor2)
    a, b = _pair(args.source), _pair(args.target)
    for (u, v) in (a, b):
        if not (0 <= u < G1.n and 0 <= v < G2.n):
            raise GraphError(f"({u},{v}) is not a product vertex")
    d = pair_distance(G1, G2, a, b)
    e1 = parity_distances(G1, a[0]).entry(b[0])
    e2 = parity_distances(G2, a[1]).entry(b[1])
    parity = None
    if d != INF and a != b:
        parity = "even" if max(e1[0], e2[0]) == d else "odd"
    elif a == b:
        parity = "even"
    out = {"distance": num(d), "parity": parity, "from": list(a), "to": list(b)}
    _emit(args, out, [[a, b, "inf" if d == INF else d, parity]])
    return 0


def cmd_delta(args) -> int:
    G = read_edge_list(args.graph)
    fn = delta_vertex if args.vertex_variant else delta_exact
    res = fn(G, _budget(args), prune=not args.no_prune, jobs=args.jobs)
    out = res.to_json()
    _emit(args, out, [["delta_num", "delta_den", "mode"], [out["delta_num"], out["delta_den"], out["mode"]]])
    return 0


def cmd_odd_cycles(args) -> int:
    G = read_edge_list(args.graph)
    lmax = args.lmax if args.lmax is not None else default_lmax(G)
    cycles = minimal_cycles(G, lmax)
    gi = odd_girth(G)
    out = {
        "odd_girth": None if gi == INF else int(gi),
        "lmax": lmax,
        "cycles": [c.to_json() for c in cycles],
    }
    rows = [["cycle", c.length, ",".join(map(str, c.vertices))] for c in cycles]
    if args.distances:
        dist = dist_to_minimal_cycles(G, lmax, cycles)
        out["distances"] = [num(None if d == INF else Fraction(int(d), UNIT)) for d in dist]
        rows += [["distance", v, "inf" if d == INF else int(d) // UNIT] for v, d in enumerate(dist)]
    _emit(args, out, rows)
    return 0


def cmd_qi(args) -> int:
    c = args.construction
    G1 = read_edge_list(args.g1)
    G2 = read_edge_list(args.g2) if args.g2 else None

    def need_g2():
        if G2 is None:
            raise GraphError(f"--g2 is required for {c}")
        return G2

    if c == "g2odd":
        out = g2odd_embedding(G1, need_g2()).report().to_json()
    elif c == "no-odd":
        out = no_odd_embedding(G1, need_g2()).report().to_json()
    elif c == "dense":
        out = dense_embedding(G1).report().to_json()
    elif c == "l-p2":
        r = lp2_inclusion(G1, need_g2())
        out = {"agree": r.agree, "mismatches": r.mismatches, "fullness": num(r.fullness),
               "diam_v2": num(Fraction(int(r.diam_v2)))}
    elif c == "gamma1":
        walk = _ints(args.walk or "")
        lift = lift_gamma(G1, walk, args.variant)
        out = {"lift": [list(x) for x in lift], "swapped": [list(x) for x in swap_layers(lift)]}
    elif c == "dc":
        chk = check_lemma_dc(G1, _ints(args.walk or ""), args.j)
        out = {"k": chk.k, "j": chk.j, "lhs": chk.lhs, "dist_to_cycles": chk.dist_to_cycles,
               "upper": num(chk.upper), "holds": chk.holds}
    elif c == "collapse":
        col = collapse_balls(G1, [_ball(b) for b in args.ball])
        out = qi_constants(G1, col.graph, col.f).to_json()
        out["K"] = col.K
        out["graph"] = format_edge_list(col.graph)
    else:
        M = INF if args.M in ("inf", "INF") else float(args.M)
        sp = product_star(G1, [_ball(b) for b in args.ball], M)
        out = qi_constants(sp.product, sp.graph, sp.F).to_json()
        out["K"] = sp.K
        out["graph"] = format_edge_list(sp.graph)
    _emit(args, out)
    return 0


def _finish(args, reps: list[reports.TheoremReport]) -> int:
    if args.format == "tsv":
        for r in reps:
            for line in r.tsv_lines():
                print(line)
    else:
        payload = [r.to_json() for r in reps]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, sort_keys=True, indent=1))
    st = {r.status for r in reps}
    return 1 if reports.FAIL in st else reports.INDET_EXIT if reports.INDET in st else 0


def cmd_report(args) -> int:
    b, j = _budget(args), args.jobs
    if args.which == "cmxpn":
        rep = reports.report_cmxpn(args.m, args.n, b, j)
    elif args.which == "path":
        rep = reports.report_pmxpn(args.m, args.n, b, j)
    elif args.which == "bipartite":
        rep = reports.report_bipartite([("input", read_edge_list(args.g1), read_edge_list(args.g2))], b, j)
    elif args.which == "unbounded":
        rep = reports.report_unbounded_growth(args.n)
    else:
        rep = reports.report_p2_growth(args.L, b, j)
    return _finish(args, [rep])


def cmd_verify(args) -> int:
    if args.list:
        for t in reports.REGISTRY:
            print(t)
        return 0
    summary = reports.verify_all(_budget(args), args.jobs, args.only, args.golden, args.write_golden)
    for r in summary.reports:
        t = r.totals
        print(f"{r.status:13s} {r.theorem:18s} pass={t['pass']} fail={t['fail']} indeterminate={t['indeterminate']}")
        for inst in r.instances:
            if inst.status != reports.PASS:
                print(f"    {inst.status}: {json.dumps(inst.params, sort_keys=True)} {json.dumps(inst.computed, sort_keys=True)}")
    for t in summary.golden_mismatch:
        print(f"golden mismatch: {t}")
    return summary.exit_code


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv"], default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="triangle budget")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="gromovprod", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--budget", type=int, default=None, help="triangle budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a family member")
    g.add_argument("kind", choices=sorted(KINDS))
    g.add_argument("params", nargs="*", help="key=value")
    g.add_argument("-o", "--output")
    g.set_defaults(fn=cmd_gen)

    g = sub.add_parser("product", parents=[common], help="direct product of two edge lists")
    g.add_argument("g1")
    g.add_argument("g2")
    g.add_argument("-o", "--output")
    g.add_argument("--index")
    g.set_defaults(fn=cmd_product)

    g = sub.add_parser("distance", parents=[common], help="product distance from factor parities")
    g.add_argument("--factor1", required=True)
    g.add_argument("--factor2", required=True)
    g.add_argument("--from", dest="source", required=True, help="u,v")
    g.add_argument("--to", dest="target", required=True, help="u2,v2")
    g.set_defaults(fn=cmd_distance)

    g = sub.add_parser("delta", parents=[common], help="exact hyperbolicity constant")
    g.add_argument("graph")
    g.add_argument("--vertex-variant", action="store_true")
    g.add_argument("--no-prune", action="store_true")
    g.set_defaults(fn=cmd_delta)

    g = sub.add_parser("odd-cycles", parents=[common], help="minimal cycles and distances to them")
    g.add_argument("graph")
    g.add_argument("--lmax", type=int)
    g.add_argument("--distances", action="store_true")
    g.set_defaults(fn=cmd_odd_cycles)

    g = sub.add_parser("qi", parents=[common], help="quasi-isometry constructions")
    g.add_argument("--construction", required=True,
                   choices=["g2odd", "no-odd", "l-p2", "gamma1", "collapse", "product-star", "dense", "dc"])
    g.add_argument("--g1", required=True)
    g.add_argument("--g2")
    g.add_argument("--walk", help="comma-separated vertex ids")
    g.add_argument("--variant", type=int, choices=[1, 2], default=1)
    g.add_argument("--j", type=int, default=0)
    g.add_argument("--ball", action="append", default=[], help="center:radius")
    g.add_argument("--M", default="inf")
    g.set_defaults(fn=cmd_qi)

    g = sub.add_parser("report", parents=[common], help="one theorem report")
    g.add_argument("which", choices=["cmxpn", "path", "bipartite", "unbounded", "p2"])
    g.add_argument("--m", type=int, nargs="+", default=[3, 5])
    g.add_argument("--n", type=int, nargs="+", default=list(range(2, 8)))
    g.add_argument("--L", type=int, nargs="+", default=[4, 8, 16])
    g.add_argument("--g1")
    g.add_argument("--g2")
    g.set_defaults(fn=cmd_report)

    g = sub.add_parser("verify", parents=[common], help="run every theorem check")
    g.add_argument("--only", nargs="+")
    g.add_argument("--golden")
    g.add_argument("--write-golden", action="store_true")
    g.add_argument("--list", action="store_true")
    g.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GraphError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
