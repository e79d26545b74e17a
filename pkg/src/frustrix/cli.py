"""Command-line front end.

Lines on stdin/stdout are ``<graph6> <hex>``: the underlying simple graph and
the signature bitmask over sorted edges. Exit codes: 0 success, 1 violations
found, 2 usage or input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import families, verify
from .errors import (
    CapacityError,
    ConnectivityError,
    FrustrixError,
    GraphFormatError,
    RuleInapplicableError,
)
from .io import format_signed_line, parse_signed_line, read_signed_lines
from .reductions import reduce_to_fixpoint
from .sgcore import is_connected, negative_edge_count
from .solver import frustration, frustration_index

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _open_input(path):
    if path in (None, "-"):
        return sys.stdin
    return open(path)


def cmd_solve(args) -> int:
    method = {"bb": "branch_bound", "brute": "bruteforce", "auto": "auto"}[args.method]
    code = EXIT_OK
    with _open_input(args.input) as fh:
        for no, g in read_signed_lines(fh):
            if isinstance(g, Exception):
                print(f"line {no}: {g}", file=sys.stderr)
                code = max(code, EXIT_USAGE)
                continue
            try:
                if not is_connected(g):
                    raise ConnectivityError("graph is disconnected")
                res = frustration(g, method)
            except CapacityError as exc:
                print(f"line {no}: {exc}", file=sys.stderr)
                code = EXIT_CAPACITY
                continue
            except FrustrixError as exc:
                print(f"line {no}: {exc}", file=sys.stderr)
                code = max(code, EXIT_USAGE)
                continue
            minimal = negative_edge_count(g) == res.f
            if args.json:
                print(json.dumps({"line": no, "n": g.n, "m": g.m, "F": res.f,
                                  "witness": res.witness_signature.to_hex(),
                                  "minimal": minimal, "method": res.method}))
            else:
                print(f"F={res.f} witness={res.witness_signature.to_hex()} "
                      f"minimal={'yes' if minimal else 'no'}")
    return code


def _family_graph(args):
    name = args.name
    if name.startswith("gamma") and name[5:].isdigit():
        return families.gamma(int(name[5:]))
    if name == "chain":
        if not args.gadgets:
            raise GraphFormatError("chain needs --gadgets, e.g. ttg")
        sub = tuple(args.subdivided.split(",")) if args.subdivided else ("ac", "bd")
        kinds = [families.TRIANGLE if c == "t" else
                 families.GadgetKind("k4", sub) if c == "g" else c
                 for c in args.gadgets]
        return families.gadget_chain(kinds)
    if name == "tritree":
        return families.triangle_tree_extremal(families.cubic_tree_path(args.k))
    if name == "petersen":
        return families.petersen_negative()
    if name in ("w1", "w2"):
        return families.w_graphs()[name.upper()]
    raise GraphFormatError(f"unknown family {name!r}")


def cmd_family(args) -> int:
    if args.name == "digon":
        g = families.digon_graph(args.k if args.k is not None else 2)
        print(json.dumps({
            "family": "digon",
            "serializable": False,
            "reason": "contains parallel edges; graph6 holds simple graphs only",
            "n": g.n,
            "edges": [[u, v, "+" if s > 0 else "-"] for u, v, s in g.edges],
        }))
        return EXIT_OK
    if args.k is None:
        args.k = 0
    print(format_signed_line(_family_graph(args)))
    return EXIT_OK


def cmd_verify(args) -> int:
    t = args.theorem
    if t == "main":
        rep = verify.verify_main_theorem(args.nmax or 9, args.out, args.workers)
    elif t == "eq38":
        rep = verify.verify_3n2_over_8(args.nmax or 9, args.out, args.workers)
    elif t == "cubic29":
        rep = verify.verify_cubic_corollary(args.n or 10, args.out, args.workers)
    elif t == "small":
        rep = verify.verify_small_characterization(args.nmax or 9, args.out, args.workers)
    else:
        rep = verify.probe_girth5_conjecture(args.nmax or 11, args.out, args.workers)
    summary = rep.summary()
    if t == "girth5":
        summary["extra"] = dict(summary["extra"], maximizers=len(rep.extra["maximizers"]))
    print(json.dumps(summary))
    print(f"runtime {rep.runtime:.2f}s", file=sys.stderr)
    if t == "girth5":
        if rep.violations:
            print(f"counterexamples found: {len(rep.violations)}", file=sys.stderr)
        return EXIT_OK
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def _read_one(args):
    if args.line:
        return parse_signed_line(" ".join(args.line))
    with _open_input(args.input) as fh:
        for _, g in read_signed_lines(fh):
            if isinstance(g, Exception):
                raise g
            return g
    raise GraphFormatError("no input line")


def cmd_reduce(args) -> int:
    g = _read_one(args)
    if not is_connected(g):
        raise ConnectivityError("reduce needs a connected graph")
    failure = None
    try:
        final, total, steps = reduce_to_fixpoint(g)
    except RuleInapplicableError as exc:
        failure = exc
        steps = getattr(exc, "steps", [])
        final = getattr(exc, "graph", g)
        total = sum(s.offset for s in steps)
    if args.trace:
        for i, s in enumerate(steps, 1):
            m = s.match
            print(f"step {i}: {s.rule} {m.variant or '-'} vertices={list(m.vertices)} "
                  f"offset={s.offset} n {s.input.n}->{s.output.n}")
        if failure is not None:
            print(f"inapplicable: {failure}")
    f_final = frustration_index(final)
    f_in = frustration_index(g)
    status = "consistent" if f_in == f_final + total else "MISMATCH"
    print(f"steps={len(steps)} offset={total} F(final)={f_final} F(input)={f_in} {status}")
    return EXIT_OK if status == "consistent" else EXIT_VIOLATION


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    for _ in range(args.count):
        g = families.random_subcubic(args.n, rng, negative_p=args.negative)
        print(format_signed_line(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frustrix", description="Frustration indices of signed subcubic graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="frustration index of each input line")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--method", choices=["auto", "bb", "brute"], default="auto")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("family", help="emit a named graph or construction")
    f.add_argument("name", help="gamma1..gamma5, chain, tritree, petersen, w1, w2, digon")
    f.add_argument("--gadgets", help="chain links: t = triangle, g = subdivided K4")
    f.add_argument("--subdivided", help="K4 edges to subdivide in g links, e.g. ac,bd")
    f.add_argument("--k", type=int, help="internal tree vertices (tritree) or digon count")
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", help="exhaustive bound check")
    v.add_argument("theorem", choices=["main", "eq38", "cubic29", "small", "girth5"])
    v.add_argument("--nmax", type=int)
    v.add_argument("--n", type=int, help="order for cubic29 (10 or 12)")
    v.add_argument("--out", help="JSON-lines report path")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="apply reduction rules until none matches")
    r.add_argument("line", nargs="*", help="'<graph6> <hex>'; read from --input otherwise")
    r.add_argument("--input", default="-")
    r.add_argument("--trace", action="store_true")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("random", help="random connected subcubic signed graphs")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--negative", type=float, default=0.5)
    g.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (FrustrixError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
