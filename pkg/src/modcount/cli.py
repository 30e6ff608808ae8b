"""``modcount`` command line: one subcommand per counting routine or construction.

Every successful run prints a single JSON object on stdout carrying exactly
one of ``exact`` (an integer or ``num/den``) or ``residue``.  Exit status is
0 on success, 1 on a domain error and 2 on a parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from . import coloring, cse, gadgets, tutte
from .errors import FormatError, ModcountError
from .fileio import (
    GraphFile,
    graph_file_of,
    parse_bipartite,
    parse_csp,
    parse_graph,
    parse_td,
    read_text,
    serialize_gadget,
    serialize_graph,
)
from .fplinalg import BipartiteCutGraph, as_modulus, compatibility_matrix, fp_rank
from .graph import Graph, LinearArrangement, cutwidth_of, k_stretch, stretch_arrangement
from .treedecomp import td_from_ordering, validate_edge_introduce_td

log = logging.getLogger("modcount")


class CrosscheckError(ModcountError):
    """Two algorithms disagreed on the same instance."""


def _value(x) -> int | str:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _load_graph(path: str) -> tuple[GraphFile, LinearArrangement]:
    gf = parse_graph(read_text(path))
    a = gf.arrangement()
    if a is None:
        log.warning("%s has no order line; using the identity arrangement", path)
        a = LinearArrangement.identity(gf.graph.n)
    return gf, a


def _instance(g: Graph, width: int) -> dict:
    return {"n": g.n, "m": g.m, "width": width}


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)
        log.info("wrote %s", path)


def _modulus(args) -> int | None:
    return None if args.mod is None else as_modulus(args.mod).p


def _crosscheck(name: str, got: int, oracle: int, mod: int | None) -> None:
    if mod is not None:
        oracle %= mod
    if got != oracle:
        raise CrosscheckError(f"crosscheck failed: {name} gave {got}, brute force gave {oracle}")


def cmd_color(args) -> dict:
    gf, a = _load_graph(args.graph)
    g, lists = gf.graph, gf.color_lists(args.q)
    mod = None if args.exact else _modulus(args)
    algo = args.algo
    if args.exact and algo != "folklore":
        log.info("--exact uses the folklore DP")
        algo = "folklore"
    if algo == "brute":
        value = coloring.count_colorings_bruteforce(g, lists)
        value = value if mod is None else value % mod
    elif algo == "folklore":
        value = coloring.count_colorings_folklore(g, lists, a, mod)
    else:
        if mod is None:
            raise ModcountError("the rank algorithm counts modulo a prime: pass --mod")
        value = coloring.count_colorings_rank(g, lists, a, mod)
    report = {"algorithm": algo, "instance": _instance(g, cutwidth_of(g, a))}
    if args.crosscheck and algo != "brute":
        _crosscheck(algo, value, coloring.count_colorings_bruteforce(g, lists), mod)
        report["crosscheck"] = "brute"
    return _result(report, value, mod)


def cmd_cse(args) -> dict:
    gf, a = _load_graph(args.graph)
    g = gf.graph
    mod = _modulus(args)
    if args.algo == "brute":
        value = cse.count_cse_bruteforce(g)
        value = value if mod is None else value % mod
        width = cutwidth_of(g, a)
    else:
        if mod is None:
            raise ModcountError("the tree-decomposition DP counts modulo a prime: pass --mod")
        td = parse_td(read_text(args.td)) if args.td else td_from_ordering(g, a)
        width = validate_edge_introduce_td(g, td)
        value = cse.count_cse_treedp(g, td, mod)
    report = {"algorithm": args.algo, "instance": _instance(g, width)}
    if args.crosscheck and args.algo != "brute":
        _crosscheck(args.algo, value, cse.count_cse_bruteforce(g), mod)
        report["crosscheck"] = "brute"
    return _result(report, value, mod)


def cmd_rank(args) -> dict:
    if (args.matching is None) == (args.bipartite is None):
        raise ModcountError("give exactly one of --matching and --bipartite")
    if args.matching is not None:
        h = BipartiteCutGraph.matching(args.matching, args.q)
    else:
        h = parse_bipartite(read_text(args.bipartite), args.q)
    value = fp_rank(compatibility_matrix(h, args.mod))
    inst = {"n": len(h.left) + len(h.right), "m": len(h.edges), "width": len(h.edges)}
    return {"algorithm": "gauss", "modulus": args.mod, "instance": inst, "exact": value}


def cmd_tutte(args) -> dict:
    gf, a = _load_graph(args.graph)
    x, y = tutte.parse_rational(args.x), tutte.parse_rational(args.y)
    value = tutte.tutte_eval(gf.graph, x, y)
    return {"algorithm": "subset-sum", "instance": _instance(gf.graph, cutwidth_of(gf.graph, a)),
            "point": [_value(x), _value(y)], "exact": _value(value)}


def cmd_stretch(args) -> dict:
    gf, a = _load_graph(args.graph)
    g = gf.graph
    rep = tutte.verify_stretch_identity(g, args.k, args.x, args.y)
    sg, sa = k_stretch(g, args.k), stretch_arrangement(g, a, args.k)
    _write(args.out, serialize_graph(graph_file_of(sg, a=sa)))
    return {"algorithm": "subset-sum", "instance": _instance(sg, cutwidth_of(sg, sa)),
            "exact": _value(rep.left), "right": _value(rep.right), "equal": rep.equal}


def cmd_gadget(args) -> dict:
    try:
        f = [int(v) for v in args.f.split(",")]
    except ValueError:
        raise FormatError(f"--f must be comma-separated integers, got {args.f!r}") from None
    inst = gadgets.function_gadget(args.q, args.k, f)
    _write(args.out, serialize_gadget(inst))
    g = inst.graph
    report = {"algorithm": "folklore", "instance": _instance(g, cutwidth_of(g, inst.arrangement))}
    if args.verify:
        ver = gadgets.verify_gadget(inst, f)
        report["verified"] = ver.ok
        report["mismatches"] = [[list(al), got, want] for al, got, want in ver.mismatches]
        if not ver.ok:
            print(json.dumps(report, sort_keys=True))
            raise ModcountError(f"gadget verification failed at {len(ver.mismatches)} precolorings")
    total = coloring.count_colorings_folklore(g, inst.lists, inst.arrangement)
    report["exact"] = total
    return report


def cmd_reduce(args) -> dict:
    c = parse_csp(read_text(args.csp))
    mod = as_modulus(args.mod).p
    red = gadgets.csp_to_listcoloring(c, mod)
    _write(args.out, serialize_graph(graph_file_of(red.graph, red.lists, red.arrangement)))
    value = coloring.count_colorings_folklore(red.graph, red.lists, red.arrangement, mod)
    report = {"algorithm": "folklore", "instance": _instance(red.graph, cutwidth_of(red.graph, red.arrangement))}
    if args.crosscheck:
        _crosscheck("reduction", value, gadgets.count_csp_bruteforce(c), mod)
        report["crosscheck"] = "brute"
    return _result(report, value, mod)


def cmd_distinct(args) -> dict:
    gf, a = _load_graph(args.graph)
    g, lists = gf.graph, gf.color_lists(args.q)
    mod = _modulus(args)
    gp, ap = gadgets.clique_chain(g, lists, a)
    _write(args.out, serialize_graph(graph_file_of(gp, a=ap)))
    q = lists.q
    clique = [gadgets.clique_vertex(g.n, q, 1, c) for c in range(1, q + 1)] if g.n else []
    if g.n:
        value = gadgets.count_essentially_distinct_with_clique(gp, q, clique, ap, mod)
    else:
        value = 1 % mod if mod else 1
    report = {"algorithm": "clique-chain+folklore", "instance": _instance(gp, cutwidth_of(gp, ap))}
    if args.crosscheck:
        _crosscheck("clique chain", value, coloring.count_colorings_bruteforce(g, lists), mod)
        report["crosscheck"] = "brute"
    return _result(report, value, mod)


def _result(report: dict, value: int, mod: int | None) -> dict:
    if mod is None:
        report["exact"] = value
    else:
        report["modulus"] = mod
        report["residue"] = value
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modcount", description=__doc__.splitlines()[0])
    parser.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="count list colorings")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--algo", choices=("brute", "folklore", "rank"), default="folklore")
    p.add_argument("--exact", action="store_true", help="exact big-integer count via the folklore DP")
    p.add_argument("--crosscheck", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("cse", help="count connected spanning edge sets")
    p.add_argument("--graph", required=True)
    p.add_argument("--mod", type=int)
    p.add_argument("--algo", choices=("brute", "treedp"), default="treedp")
    p.add_argument("--td", help="edge-introduce tree decomposition file")
    p.add_argument("--crosscheck", action="store_true")
    p.set_defaults(func=cmd_cse)

    p = sub.add_parser("rank", help="rank of a compatibility matrix over F_p")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--matching", type=int)
    p.add_argument("--bipartite")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("tutte", help="evaluate the Tutte polynomial at a rational point")
    p.add_argument("--graph", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("stretch", help="check the k-stretch identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", default="1")
    p.add_argument("--y", default="2")
    p.add_argument("--out", help="write the stretched graph")
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("gadget", help="emit a gadget with prescribed extension counts")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--f", required=True, help="values over [q]^k in lexicographic order")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("reduce", help="reduce a CSP to list coloring modulo p")
    p.add_argument("--csp", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--crosscheck", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("distinct", help="clique chain and essentially distinct colorings")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--out")
    p.add_argument("--crosscheck", action="store_true")
    p.set_defaults(func=cmd_distinct)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ModcountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report["command"] = args.command
    report["argv"] = argv
    if not args.no_timing:
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    print(json.dumps(report, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
