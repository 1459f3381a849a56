"""Command-line entry point: ``viewprop check|bench|model-run``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import MODES, compare, plot_metrics, render_metrics, run_benchmark
from .errors import ModelError, UniverseOverflow, UsageError
from .model import load_model
from .oracle import DEFAULT_BUDGET
from .report import RENDERERS
from .search import solve
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="viewprop", description="Derived propagators: checks and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a verification suite")
    check.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max stores enumerated per check")
    check.add_argument("--format", choices=sorted(RENDERERS), default="text")
    check.add_argument("--out", type=Path, help="write the report here instead of stdout")

    bench = sub.add_parser("bench", help="compare derived and decomposed models")
    bench.add_argument("model", type=Path)
    bench.add_argument("--mode", choices=[*MODES, "both"], default="both")
    bench.add_argument("--reps", type=int, default=11)
    bench.add_argument("--n", type=int, help="model size parameter")
    bench.add_argument("--format", choices=sorted(RENDERERS), default="text")
    bench.add_argument("--out", type=Path, help="write a PNG chart here")

    run = sub.add_parser("model-run", help="propagate and search a model")
    run.add_argument("model", type=Path)
    run.add_argument("--n", type=int, help="model size parameter")
    run.add_argument("--mode", choices=MODES, default="derived")
    return parser


def cmd_check(args) -> int:
    if args.budget <= 0:
        raise UsageError("--budget must be positive")
    reports = run_suite(args.suite, seed=args.seed, budget=args.budget)
    text = RENDERERS[args.format](reports)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if any(r.verdict is False for r in reports) else EXIT_OK


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    model = load_model(args.model, args.n)
    if args.mode == "both":
        comparison = compare(model, args.reps, n=args.n)
        runs = [comparison.derived, comparison.decomposed]
    else:
        comparison = None
        runs = [run_benchmark(model, args.mode, args.reps, n=args.n)]
    sys.stdout.write(render_metrics(runs, comparison, args.format))
    if args.out:
        plot_metrics(runs, args.out)
    return EXIT_OK


def cmd_model_run(args) -> int:
    model = load_model(args.model, args.n)
    store, props = model.compile(args.mode)
    limit = {"none": 0, "first": 1, "all": None}[model.solve]
    result = solve(store, props, model.variables, limit=limit, search=limit != 0)
    if result.root_failed or (limit != 0 and not result.solutions):
        print("UNSAT")
    elif limit == 0:
        print("STORE " + result.root.restrict(model.variables).encode())
    else:
        for s in result.solutions:
            print("SOLUTION " + " ".join(f"{v}={_value(s[v])}" for v in model.variables))
    print(f"STATS nodes={result.stats.nodes} solutions={result.stats.solutions} executions={result.stats.executions}")
    return EXIT_OK


def _value(v) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    return str(v)


COMMANDS = {"check": cmd_check, "bench": cmd_bench, "model-run": cmd_model_run}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_FAIL
    except (ModelError, UniverseOverflow) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
