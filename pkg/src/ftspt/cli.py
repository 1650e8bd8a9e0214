"""``ftspt`` command line: gen, build, verify, bench.

Exit status: 0 on success, 1 when a verification finds a violation,
2 on bad input (arguments, files, graph contents).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .bench import EPS_KINDS, SPANNER_KINDS, bench, build_structure, rows_to_csv
from .bfs import read_spanner, write_spanner
from .easpt import ContractViolation
from .generate import ExperimentSpec, GenerationError, generate, header_lines
from .graph import InputError, read_graph, write_graph
from .oracle import FaultModel, default_bounds, verify
from .structure import Kind, read_structure, write_structure

log = logging.getLogger("ftspt")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    spec = ExperimentSpec(args.generator, args.weights, args.seed)
    g = generate(spec)
    if args.out:
        write_graph(g, args.out, header_lines(g))
    else:
        from .graph import format_graph

        sys.stdout.write(format_graph(g, header_lines(g)))
    log.info("generated n=%d m=%d", g.n, g.m)
    return EXIT_OK


def cmd_build(args) -> int:
    g = read_graph(args.graph)
    kind = Kind(args.kind)
    if kind in EPS_KINDS and args.eps is None:
        raise InputError(f"build {kind.value} needs --eps")
    spanner = None
    if args.spanner:
        if kind not in SPANNER_KINDS:
            raise InputError("--spanner only applies to eabfs, vabfs and spanner")
        spanner = read_spanner(g, args.spanner, args.alpha, args.beta)
    h, traces = build_structure(kind, g, args.source, eps=args.eps, k=args.k, spanner=spanner)
    if kind is Kind.SPANNER:
        from .bfs import SpannerResult

        write_spanner(g, SpannerResult(h.edges, h.params["alpha"], h.params["beta"]), args.out)
    else:
        write_structure(g, h, args.out, traces if kind in EPS_KINDS else None)
    for w in h.warnings:
        log.warning("%s", w)
    log.info("%s: %d edges (base %d, added %d)", kind.value, h.size, h.base_size, h.added)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    h = read_structure(g, args.structure)
    model, alpha, beta = None, args.alpha, args.beta
    try:
        model, d_alpha, d_beta = default_bounds(h)
        alpha = d_alpha if alpha is None else alpha
        beta = d_beta if beta is None else beta
    except (InputError, KeyError):
        pass
    if args.model:
        model = FaultModel(args.model)
    if model is None or alpha is None:
        raise InputError("cannot infer the guarantee; pass --model and --alpha")
    source = h.source if args.source is None else args.source
    report = verify(g, h, source, model, alpha, beta or 0.0)
    _emit(report.dumps_csv() if args.format == "csv" else report.dumps_json(), args.out)
    log.info(
        "max stretch %.6g over %d faults, %d violations", report.global_max_stretch, len(report.per_fault), len(report.violations)
    )
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_bench(args) -> int:
    kind = Kind(args.kind)
    if kind in EPS_KINDS:
        params = args.eps or [0.5]
    elif kind in SPANNER_KINDS:
        params = args.k or [2]
    else:
        params = [0]
    rows = bench(kind, args.n, params, args.seed, args.repeat, args.degree, args.weights, args.jobs)
    if args.format == "json":
        text = json.dumps([asdict(r) for r in rows], indent=2, sort_keys=True) + "\n"
    else:
        text = rows_to_csv(rows)
    _emit(text, args.out)
    failed = [r for r in rows if r.failed]
    for r in failed:
        log.error("FAILED n=%d eps=%s kind=%s max_stretch=%r", r.n, r.eps, r.kind, r.max_stretch)
    return EXIT_VIOLATION if failed else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p = argparse.ArgumentParser(prog="ftspt", description="Fault-tolerant approximate shortest-path structures.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a seeded graph")
    g.add_argument("generator", help="gnp(n,p) | gnm(n,m) | grid(r,c) | cycle(n) | file(path)")
    g.add_argument("--weights", default="unit", help="unit | uniform(lo,hi)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", parents=[common], help="build a structure from a graph file")
    b.add_argument("kind", choices=[k.value for k in Kind])
    b.add_argument("--graph", required=True)
    b.add_argument("--source", type=int, default=0)
    b.add_argument("--eps", type=float)
    b.add_argument("--k", type=int)
    b.add_argument("--spanner", help="edge-list file of an external spanner")
    b.add_argument("--alpha", type=float)
    b.add_argument("--beta", type=float)
    b.add_argument("--seed", type=int, default=0, help="accepted for symmetry; builds are deterministic")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check a structure against the exact failure oracle")
    v.add_argument("--graph", required=True)
    v.add_argument("--structure", required=True)
    v.add_argument("--source", type=int)
    v.add_argument("--model", choices=[m.value for m in FaultModel])
    v.add_argument("--alpha", type=float)
    v.add_argument("--beta", type=float)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("bench", parents=[common], help="sweep sizes and parameters on seeded G(n,p) graphs")
    r.add_argument("kind", choices=[k.value for k in Kind])
    r.add_argument("--n", type=_ints, default=[50, 100, 200])
    r.add_argument("--eps", type=_floats)
    r.add_argument("--k", type=_ints)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--repeat", type=int, default=1)
    r.add_argument("--degree", type=float, default=6.0, help="expected average degree")
    r.add_argument("--weights", help="weight model (default uniform(1,100), unit for BFS kinds)")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--out")
    r.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, GenerationError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except OSError as exc:
        log.error("%s: %s", exc.filename or "I/O", exc.strerror or exc)
        return EXIT_INPUT
    except (json.JSONDecodeError, ContractViolation) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
