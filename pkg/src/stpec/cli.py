"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 bad input, 3 instance
rejected by the precheck, 4 solver and oracle disagree.
"""

from __future__ import annotations

import argparse
import os
import sys

from .digraph import GraphError
from .dp import solve
from .io import alt_cycle, parse_edge_list, random_planar, read_instance, write_instance
from .oracle import MAX_BRUTE_VERTICES, brute_force_min_completion
from .planarity import st_conditions, test_planarity

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_REJECT = 3
EXIT_ORACLE = 4

DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _load(path):
    try:
        return read_instance(path)
    except (OSError, GraphError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_edges(path, n):
    try:
        with open(path) as fh:
            return parse_edge_list(fh.read(), n)
    except (OSError, GraphError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def default_seed() -> int:
    raw = os.environ.get("STPEC_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"STPEC_SEED must be an integer, got {raw!r}") from None


def cmd_solve(args, out) -> int:
    g = _load(args.input)
    if args.k < 0:
        raise InputError("k must be non-negative")
    ref_edges = None
    if args.ref_edge:
        u, v = args.ref_edge
        if g.has_edge(u, v):
            ref_edges = [(u, v)]
        elif g.has_edge(v, u):
            ref_edges = [(v, u)]
        else:
            raise InputError(f"--ref-edge {u} {v} is not an edge of the instance")
    embedding = None
    if args.fixed_embedding:
        embedding = test_planarity(g)  # None when not planar; the precheck reports it
    trace = [] if args.trace else None
    res = solve(g, args.k, embedding=embedding, ref_edges=ref_edges, jobs=args.jobs, trace=trace)
    print(res.report(), file=out)
    if res.reason is not None:
        return EXIT_REJECT
    if args.witness and res.answer:
        for u, v in res.witness:
            print(f"{u} {v}", file=out)
    if args.trace:
        if embedding is not None:
            face = embedding.faces[embedding.external_face]
            print(f"# external face: {' '.join(map(str, face.vertices))}", file=out)
        for e, cost in res.per_edge.items():
            sizes = res.table_sizes.get(e, {})
            shown = "-" if cost is None else cost
            print(f"# ref {e[0]} {e[1]}: cost {shown}, tables "
                  + " ".join(f"{i}:{s}" for i, s in sizes.items()), file=out)
    if args.oracle_check:
        if g.n > MAX_BRUTE_VERTICES:
            print(f"# oracle skipped (n > {MAX_BRUTE_VERTICES})", file=out)
        elif embedding is None and ref_edges is None:
            ora = brute_force_min_completion(g, args.k)
            got = res.min_edges if res.answer else None
            if ora.minimum != got:
                print(f"oracle disagrees: oracle {ora.minimum}, solver {got}", file=out)
                return EXIT_ORACLE
            print("# oracle agrees", file=out)
        else:
            print("# oracle check only covers the unrestricted problem", file=out)
    return EXIT_OK


def cmd_generate(args, out) -> int:
    if args.family == "alt-cycle":
        if args.m is None:
            raise InputError("alt-cycle needs --m")
        try:
            g = alt_cycle(args.m)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        note = f"alt-cycle m={args.m}"
    else:
        if args.n is None:
            raise InputError("random-planar needs --n")
        seed = args.seed if args.seed is not None else default_seed()
        try:
            g = random_planar(args.n, seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        note = f"random-planar n={args.n} seed={seed}"
    write_instance(g, args.output)
    print(f"# {note}: wrote {args.output} ({g.n} vertices, {g.m} edges)", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = _load(args.input)
    extra = _load_edges(args.edges, g.n)
    try:
        h = g.with_edges(extra)
    except GraphError as exc:
        raise InputError(f"{args.edges}: {exc}") from None
    cond = st_conditions(h)
    names = [("acyclic", "(1) no directed cycle"),
             ("single_source_sink", "(2) single source and single sink"),
             ("cofacial", "(3) source and sink on the external face")]
    ok = True
    for key, label in names:
        if key == "cofacial" and not cond["single_source_sink"]:
            continue  # undefined without a unique source and sink
        if not cond[key]:
            ok = False
            print(f"FAILED {label}", file=out)
    if ok:
        print(f"OK st-planar with {len(extra)} added edges", file=out)
        return EXIT_OK
    return EXIT_VERIFY_FAILED


def dot_text(g, extra=()) -> str:
    lines = ["digraph G {"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -> {v};" for u, v in sorted(g.edges)]
    lines += [f"  {u} -> {v} [style=dashed];" for u, v in sorted(extra)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args, out) -> int:
    g = _load(args.input)
    extra = _load_edges(args.edges, g.n) if args.edges else []
    out.write(dot_text(g, extra))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stpec", description="st-planar edge completion")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide and optimise a completion")
    s.add_argument("--input", required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--witness", action="store_true", help="print the added edges")
    s.add_argument("--oracle-check", action="store_true", help="cross-check against brute force")
    s.add_argument("--ref-edge", nargs=2, type=int, metavar=("U", "V"))
    s.add_argument("--fixed-embedding", action="store_true",
                   help="keep the embedding found by the planarity test")
    s.add_argument("--trace", action="store_true", help="print per reference edge table sizes")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    gen = sub.add_parser("generate", help="write an instance from a family")
    gen.add_argument("--family", required=True, choices=["alt-cycle", "random-planar"])
    gen.add_argument("--m", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--output", required=True)
    gen.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check that added edges give an st-planar graph")
    v.add_argument("--input", required=True)
    v.add_argument("--edges", required=True)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("export-dot", help="print the instance as DOT")
    d.add_argument("--input", required=True)
    d.add_argument("--edges")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
