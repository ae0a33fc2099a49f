"""Command-line front end.

    nlsmt FILE [--timeout S] [--max-steps N] [--select dyadic|cf]
               [--precision P] [--model] [--stats] [--trace FILE]
    nlsmt gen-k N D
    nlsmt gen-c R2
    nlsmt plot FILE [--outdir DIR]

FILE may be '-' for standard input.  The verdict (sat / unsat / unknown) is
the first line on standard output; exit code 0 for sat/unsat, 2 for unknown,
1 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
import threading

from .bench import gen_C, gen_K
from .errors import CnfBlowup, NlsmtError, NonPlanarTrace
from .lowering import lower, problem_to_smtlib, _render_linear_atom
from .rationals import Rat
from .smtlib import format_rational, parse
from .solver import Limits, Solver


def _solve_parser():
    p = argparse.ArgumentParser(prog="nlsmt", description="non-linear real arithmetic solver")
    p.add_argument("input", help="SMT-LIB2 file, or - for stdin")
    p.add_argument("--timeout", type=float, default=3600.0, metavar="S")
    p.add_argument("--max-steps", type=int, default=10_000_000, metavar="N")
    p.add_argument("--select", choices=("dyadic", "cf"), default="dyadic")
    p.add_argument("--precision", type=int, default=16, metavar="P")
    p.add_argument("--model", action="store_true", help="print a model after sat")
    p.add_argument("--stats", action="store_true", help="print solver statistics")
    p.add_argument("--trace", metavar="FILE", help="write a rule-application trace")
    p.add_argument("--seed-values", metavar="LIST", default=None,
                   help="comma-separated name=value forced first decisions")
    return p


def _print_model(problem, model, out):
    parts = []
    for name in problem.names[: problem.n_original]:
        parts.append(f"(define-fun {name} () Real {format_rational(model[name])})")
    out.write("(model " + " ".join(parts) + ")\n")


def _run_solve(args) -> int:
    if args.timeout <= 0 or args.max_steps <= 0:
        print("timeout and max-steps must be positive", file=sys.stderr)
        return 1
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, "r").read()
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 1
    try:
        script = parse(text)
        problem = lower(script)
    except CnfBlowup:
        print("unknown")
        return 2
    except NlsmtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    seeds = []
    if args.seed_values:
        for item in args.seed_values.split(","):
            name, _, val = item.partition("=")
            seeds.append((name.strip(), Rat(val.strip())))

    trace_fh = open(args.trace, "w") if args.trace else None
    if trace_fh is not None:
        trace_fh.write("vars " + " ".join(problem.names) + "\n")
        for clause in problem.linear:
            atoms = [_render_linear_atom(a, problem.names) for a in clause.atoms]
            body = atoms[0] if len(atoms) == 1 else "(or " + " ".join(atoms) + ")"
            trace_fh.write(f"I clause={body}\n")

    cancelled = threading.Event()
    timer = threading.Timer(args.timeout, cancelled.set)
    timer.daemon = True
    timer.start()
    try:
        solver = Solver(
            problem,
            strategy=args.select,
            p0=args.precision,
            seeds=seeds,
            trace=trace_fh,
        )
        verdict = solver.solve(
            Limits(max_steps=args.max_steps, timeout=args.timeout, cancel=cancelled.is_set)
        )
    finally:
        timer.cancel()
        if trace_fh is not None:
            trace_fh.close()

    print(verdict.status)
    wants_model = args.model or "get-model" in script.actions
    if verdict.status == "sat" and wants_model:
        _print_model(problem, verdict.model, sys.stdout)
    if args.stats:
        for key, value in verdict.stats.as_dict().items():
            if key == "wall_time":
                print(f"{key}: {value:.3f}s")
            else:
                print(f"{key}: {value}")
    return 0 if verdict.status in ("sat", "unsat") else 2


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "gen-k":
        p = argparse.ArgumentParser(prog="nlsmt gen-k")
        p.add_argument("n", type=int)
        p.add_argument("d", type=int)
        ns = p.parse_args(argv[1:])
        if ns.n < 1 or ns.d < 1:
            print("n and d must be at least 1", file=sys.stderr)
            return 1
        sys.stdout.write(gen_K(ns.n, ns.d))
        return 0
    if argv and argv[0] == "gen-c":
        p = argparse.ArgumentParser(prog="nlsmt gen-c")
        p.add_argument("r_squared")
        ns = p.parse_args(argv[1:])
        r2 = Rat(ns.r_squared)
        if r2 < 0:
            print("r_squared must be nonnegative", file=sys.stderr)
            return 1
        sys.stdout.write(gen_C(r2))
        return 0
    if argv and argv[0] == "plot":
        p = argparse.ArgumentParser(prog="nlsmt plot")
        p.add_argument("trace")
        p.add_argument("--outdir", default=".")
        ns = p.parse_args(argv[1:])
        from .plot import plot_trace

        try:
            files = plot_trace(ns.trace, ns.outdir)
        except (NonPlanarTrace, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        for f in files:
            print(f)
        return 0
    try:
        args = _solve_parser().parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    return _run_solve(args)


if __name__ == "__main__":
    sys.exit(main())
