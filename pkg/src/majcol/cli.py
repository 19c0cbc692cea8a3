"""Command-line front end: ``majcol generate|colour|verify|experiment|lp|exact``.

Exit codes: 0 success / PASS, 1 verification FAIL (or no colouring found by
``exact``), 2 usage or input error, 3 solver failure, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import graph, lpbound, solver, verify
from .spectral import PerronConvergenceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(data: dict, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True), file=stream)
    else:
        for key, value in data.items():
            if isinstance(value, list):
                value = " ".join(map(str, value)) if value else "-"
            print(f"{key}: {value}", file=stream)


def _positive(name: str, value, minimum: int = 1):
    if value is None or value < minimum:
        raise UsageError(f"--{name} must be at least {minimum}")
    return value


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "regular":
        q = _positive("q", args.q)
        if q % 2 == 0:
            raise UsageError(f"--q must be odd, got {q}")
        D = graph.gen_regular_tournament(q)
    elif kind == "regular-random":
        q = _positive("q", args.q)
        if q % 2 == 0:
            raise UsageError(f"--q must be odd, got {q}")
        D = graph.gen_random_regular_tournament(q, args.seed)
    elif kind == "tournament":
        D = graph.gen_random_tournament(_positive("n", args.n, 0), args.seed)
    else:
        if args.p is None or not 0 <= args.p <= 1:
            raise UsageError("--p must lie in [0, 1]")
        D = graph.gen_random_digraph(_positive("n", args.n, 0), args.p, args.seed)
    _write(args.output, graph.write_edge_list(D))
    return EXIT_OK


def _colouring_summary(D, col, num: int, den: int, palette_size: int) -> dict:
    counts = verify.monochrome_out_counts(D, col)
    deg = D.out_deg
    worst = max(
        (Fraction(int(b), int(d)) for b, d in zip(counts, deg) if d > 0), default=Fraction(0)
    )
    violations = verify.check_fraction(D, col, num, den)
    return {
        "vertices": D.n,
        "arcs": D.num_arcs,
        "palette_size": palette_size,
        "colours_used": int(np.unique(col.colour).shape[0]) if D.n else 0,
        "threshold": _frac_str(Fraction(num, den)),
        "max_monochrome_fraction": _frac_str(worst),
        "max_monochrome_fraction_decimal": float(worst),
        "verdict": "PASS" if not violations else "FAIL",
    }


def cmd_colour(args) -> int:
    D = graph.read_edge_list(_read(args.input))
    opts = dict(eps=args.eps, tol=args.tol, init=args.init, seed=args.seed)
    if args.mode == "partition":
        if (args.k is None) == (args.t is None):
            raise UsageError("give exactly one of --k and --t")
        if args.k is not None and args.k < 2:
            raise UsageError("--k must be at least 2")
        t = 2 * args.k if args.k is not None else _positive("t", args.t, 2)
        col = solver.partition_colouring(D, t, **opts)
        # t = 2k classes: share 2/t = 1/k
        num, den = Fraction(2, t).numerator, Fraction(2, t).denominator
        summary = _colouring_summary(D, col, num, den, t)
        summary["mode"] = "partition"
    else:
        if args.lists is None:
            raise UsageError("list mode needs --lists FILE")
        L = verify.read_lists(_read(args.lists))
        if L.n != D.n:
            raise UsageError(f"list file covers {L.n} vertices, digraph has {D.n}")
        m = _positive("list size", L.m, 2)
        col = solver.list_colouring(D, L, **opts)
        summary = _colouring_summary(D, col, 2, m, col.palette_size)
        summary["mode"] = "list"
        summary["list_size"] = m
        summary["respects_lists"] = verify.respects_lists(col, L)
    _write(args.output, verify.write_colouring(col))
    # the colouring owns stdout unless it went to a file
    to_stdout = args.output not in (None, "-")
    _emit(summary, args.json, sys.stdout if to_stdout else sys.stderr)
    return EXIT_OK if summary["verdict"] == "PASS" else EXIT_FAIL


def cmd_verify(args) -> int:
    D = graph.read_edge_list(_read(args.input))
    col = verify.read_colouring(_read(args.colouring))
    if col.n != D.n:
        raise UsageError(f"colouring covers {col.n} vertices, digraph has {D.n}")
    if args.k is not None:
        if args.num is not None or args.den is not None:
            raise UsageError("give either --k or --num/--den")
        if args.k < 2:
            raise UsageError("--k must be at least 2")
        violations = verify.check_majority(D, col, args.k)
        threshold = Fraction(1, args.k)
    else:
        if args.num is None or args.den is None:
            raise UsageError("give --k or both --num and --den")
        if not 0 < args.num <= args.den:
            raise UsageError("need 0 < num <= den")
        violations = verify.check_fraction(D, col, args.num, args.den)
        threshold = Fraction(args.num, args.den)
    data = {
        "verdict": "FAIL" if violations else "PASS",
        "threshold": _frac_str(threshold),
        "violations": [
            {"vertex": v.vertex, "same_colour_out": v.same_colour_out,
             "out_degree": v.out_degree, "allowed": v.allowed}
            for v in violations
        ],
    }
    if args.json:
        _emit(data, True)
    else:
        print(data["verdict"])
        for v in violations:
            print(f"vertex {v.vertex}: {v.same_colour_out} same-coloured of {v.out_degree} "
                  f"out-neighbours, allowed {v.allowed}")
    return EXIT_FAIL if violations else EXIT_OK


def cmd_experiment(args) -> int:
    if args.input is not None:
        T = graph.read_edge_list(_read(args.input))
        source = {"input": args.input}
    else:
        n = _positive("n", args.n, 0)
        graph_seed = args.seed if args.graph_seed is None else args.graph_seed
        T = graph.gen_random_tournament(n, graph_seed)
        source = {"n": n, "graph_seed": graph_seed}
    if not T.is_tournament():
        raise UsageError("experiment needs a tournament")
    report = solver.random_three_colouring(T, _positive("trials", args.trials), args.seed)
    data = {"tournament": {**source, "vertices": T.n, "min_out_degree": int(T.out_deg.min(initial=0))}}
    data.update(report.to_dict())
    if args.min_outdeg_report:
        classes = verify.dyadic_classes(T)
        data["dyadic_classes"] = [
            {"i": i, "size": len(s), "limit": 2 ** (i + 1) - 1, "ok": len(s) <= 2 ** (i + 1) - 1}
            for i, s in classes.items()
        ]
        data["dyadic_bound_holds"] = all(c["ok"] for c in data["dyadic_classes"])
    _write(args.output, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_lp(args) -> int:
    try:
        tail = lpbound.parse_fraction(args.tail)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 1 <= args.lo <= args.hi:
        raise UsageError("need 1 <= lo <= hi")
    report = lpbound.bound_report(args.lo, args.hi, tail)
    if args.json:
        print(json.dumps(report.to_dict(args.digits), indent=2, sort_keys=True))
    else:
        sys.stdout.write(report.to_text(args.digits))
    return EXIT_OK


def cmd_exact(args) -> int:
    D = graph.read_edge_list(_read(args.input))
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    m = solver.exact_min_colours(D, args.k, args.m_max, args.budget)
    data = {"k": args.k, "vertices": D.n, "min_colours": m if m is not None else "none"}
    _emit(data, args.json)
    return EXIT_OK if m is not None else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="majcol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated digraph as an edge list")
    p.add_argument("kind", choices=["regular", "regular-random", "tournament", "random"])
    p.add_argument("--q", type=int, help="odd order of a regular tournament")
    p.add_argument("--n", type=int, help="number of vertices")
    p.add_argument("--p", type=float, help="arc probability for 'random'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("colour", help="compute a majority colouring")
    p.add_argument("mode", choices=["partition", "list"])
    p.add_argument("-i", "--input", help="edge-list file (default: stdin)")
    p.add_argument("-o", "--output", help="colouring file (default: stdout)")
    p.add_argument("--k", type=int, help="partition into 2k classes, 1/k-majority")
    p.add_argument("--t", type=int, help="partition into t classes")
    p.add_argument("--lists", help="list file, one 'v c1 ... cm' line per vertex")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--init", choices=["first", "random"], default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("verify", help="check a colouring")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--colouring", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--num", type=int)
    p.add_argument("--den", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="random 3-colourings of a tournament")
    p.add_argument("-i", "--input", help="tournament edge list (default: random tournament)")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph-seed", type=int)
    p.add_argument("--min-outdeg-report", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("lp", help="exact chain-LP bound on expected bad vertices")
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=1023)
    p.add_argument("--tail", default="1/4", help="rational 'a/b' added to the optimum")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("exact", help="fewest colours, by exhaustive search")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m-max", type=int)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exact)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"majcol {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except solver.SearchBudgetExceeded as exc:
        print(f"majcol {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (solver.SolverError, PerronConvergenceError) as exc:
        print(f"majcol {args.command}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValueError, OSError) as exc:
        print(f"majcol {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
