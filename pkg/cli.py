"""
symbreak: exact distinguishing numbers and indices of graph joins
===================================================================
Subcommands:
    gen        family + parameters -> graph6
    compute    D, D' or Aut of one graph -> JSON with a verified witness
    partition  closure classes, Gamma classes, q, z, lambda_1, lambda_2 of G1 + G2 -> JSON
    bounds     every applicable bound for G1 + G2 -> JSON report
    verify     sweep one theorem over a parameter range -> JSON manifest
    corpus     all pairs of small connected graphs -> CSV

Graphs are given as graph6, @file (graph6 or edge list) or a family spec
such as friendship:3 or "join(star:3,star:3)".

Usage:
    python cli.py compute --what number cycle:5
    python cli.py bounds complete_bipartite:3,2 complete_bipartite:3,1 --exact
    python cli.py verify --theorem iterated --range "n=2..5,k=2"
    python cli.py corpus --max-order 4 > corpus.csv

Exit codes: 0 ok, 1 invariant violation, 2 input error, 3 resource cap.
"""

import argparse
import logging
import sys
import time

import config
from config import EXIT_INVARIANT, EXIT_OK, TOOL_VERSION
from models.schemas import ComputeResult
from services import runner
from services.serializer import dumps, gamma_certificate, to_json, witness_model, write_csv
from utils.automorphism import automorphisms, orbits
from utils.bounds import full_report
from utils.corpus import BINARY, build_family, resolve_graph
from utils.distinguishing import (
    distinguishing_index,
    distinguishing_number,
    is_distinguishing,
    is_distinguishing_edges,
)
from utils.errors import InvariantViolation, SymbreakError
from utils.graph import join
from utils.graph_io import write_graph6
from utils.join_partition import analyze, certificate, lambda_bounds

logger = logging.getLogger("symbreak.cli")


def cmd_gen(args) -> int:
    params = args.params
    if args.family not in BINARY:
        params = [p for raw in params for p in raw.split(",") if p]
    print(write_graph6(build_family(args.family, params)))
    return EXIT_OK


def cmd_compute(args) -> int:
    """Exact D, D' or Aut of one graph, with its witness."""
    g = resolve_graph(args.graph)
    t0 = time.time()
    if args.what == "aut":
        group = automorphisms(g)
        result = ComputeResult(graph=write_graph6(g), name=g.name, what="aut", value=group.order,
                               group_order=group.order, orbits=[list(o) for o in orbits(g, group)])
    elif args.what == "number":
        r = distinguishing_number(g)
        result = ComputeResult(graph=write_graph6(g), name=g.name, what="number", value=r.value,
                               group_order=r.group_order, witness=witness_model(r.witness),
                               verified=is_distinguishing(g, r.witness))
    else:
        r = distinguishing_index(g)
        verified = None
        if r.defined and g.size:
            verified = is_distinguishing_edges(g, r.witness)
        result = ComputeResult(graph=write_graph6(g), name=g.name, what="index", value=r.value,
                               defined=r.defined, group_order=r.group_order,
                               witness=witness_model(r.witness), verified=verified)
    if args.timings:
        result.runtime_s = round(time.time() - t0, 3)
    print(to_json(result))
    if result.verified is False:
        logger.error("witness failed re-verification")
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_partition(args) -> int:
    """Gamma structure certificate of G1 + G2."""
    jg = join(resolve_graph(args.g1), resolve_graph(args.g2))
    gs = analyze(jg)
    print(to_json(gamma_certificate(certificate(jg, gs, lambda_bounds(jg, gs)))))
    return EXIT_OK


def cmd_bounds(args) -> int:
    report = full_report(resolve_graph(args.g1), resolve_graph(args.g2), exact=args.exact, threads=args.threads)
    print(to_json(report))
    return EXIT_OK if report.ok else EXIT_INVARIANT


def cmd_verify(args) -> int:
    """Sweeps one theorem; exit 1 on the first failure."""
    manifest = runner.verify(args.theorem, args.range, threads=args.threads, timings=args.timings,
                             corpus_file=args.corpus_file)
    print(to_json(manifest))
    if not manifest.passed:
        logger.error("verify %s failed on %s", args.theorem, manifest.failure["instance"])
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_corpus(args) -> int:
    rows = runner.corpus_rows(args.max_order, threads=args.threads, corpus_file=args.corpus_file,
                              exact=not args.no_exact)
    write_csv(rows, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symbreak", description="Distinguishing numbers and indices of graph joins")
    parser.add_argument("--version", action="version", version=f"symbreak {TOOL_VERSION}")
    parser.add_argument("--aut-cap", type=int, default=None, help=f"largest order for Aut enumeration (default {config.AUT_VERTEX_CAP})")
    parser.add_argument("--label-cap", type=int, default=None, help=f"largest labeling search (default {config.LABEL_POINT_CAP} points)")
    parser.add_argument("--time-budget", type=float, default=None, help=f"seconds per exact call, 0 = unlimited (default {config.EXACT_TIME_BUDGET_S:g})")
    parser.add_argument("--threads", type=int, default=None, help="worker pool size (default $SYMBREAK_THREADS or 2)")
    parser.add_argument("--timings", action="store_true", help="include wall-clock fields in JSON output")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph as graph6")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("compute", help="exact D, D' or Aut")
    p.add_argument("--what", choices=["number", "index", "aut"], required=True)
    p.add_argument("graph")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("partition", help="Gamma structure certificate of G1 + G2")
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("bounds", help="bound report for G1 + G2")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--exact", action="store_true", help="compute D and D' of the join with the exact solvers")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="sweep one theorem over a range")
    p.add_argument("--theorem", required=True, choices=sorted(runner.REGISTRY))
    p.add_argument("--range", default=None, help='e.g. "n=2..5,k=2" or "corpus<=6"')
    p.add_argument("--corpus-file", default=None, help="graph6 lines replacing the built-in corpus")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="CSV over all pairs of connected graphs")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--corpus-file", default=None)
    p.add_argument("--no-exact", action="store_true", help="skip exact D and D' of the joins")
    p.set_defaults(func=cmd_corpus)
    return parser


def apply_overrides(args) -> None:
    """Writes the global cap flags into config."""
    if args.aut_cap is not None:
        config.AUT_VERTEX_CAP = args.aut_cap
    if args.label_cap is not None:
        config.LABEL_POINT_CAP = args.label_cap
    if args.time_budget is not None:
        config.EXACT_TIME_BUDGET_S = args.time_budget
    if args.threads is not None:
        config.THREADS = args.threads


def main(argv=None) -> int:
    """Parses argv, runs the subcommand and maps errors to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s", stream=sys.stderr)
    apply_overrides(args)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        logger.error("%s", exc)
        print(dumps(exc.certificate))
        return exc.exit_code
    except SymbreakError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
