"""Command-line benchmark harness.

Examples:

    dynkd-bench --n 50000,100000 --pattern random --balance avl1 --csv out.csv
    dynkd-bench --targets 2e7 --balance redblack --repeats 3 --csv -
    dynkd-bench --n 100000 --compare-backends
"""

import argparse
import sys

from ._backend import AUTO, COMPILED, HAVE_COMPILED, PURE, available_backends
from .bench import (
    BenchConfig,
    BenchmarkError,
    RANDOM,
    SORTED,
    compare_backends,
    run_suite,
    write_csv,
)
from .dataset import DEFAULT_SEED
from .policy import ALWAYS_SUCCESSOR, BalancePolicy, HIGHER_SUBTREE
from .rebuild import PARALLEL_THRESHOLD

_BALANCE_LABELS = ("avl1", "avl2", "avl3", "avl4", "redblack")


def _int_list(text):
    return [int(part) for part in text.split(",") if part]


def _float_list(text):
    return [float(part) for part in text.split(",") if part]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dynkd-bench",
        description="Benchmark the dynamic, self-balancing k-d tree.",
    )
    parser.add_argument("--k", type=int, default=3, help="dimension count")
    parser.add_argument(
        "--targets",
        type=_float_list,
        default=None,
        metavar="T1,T2,...",
        help="comma-separated n*log2(n) targets; sizes are solved from these",
    )
    parser.add_argument(
        "--n",
        type=_int_list,
        default=None,
        metavar="N1,N2,...",
        help="explicit comma-separated tree sizes (overrides --targets)",
    )
    parser.add_argument(
        "--pattern", choices=(RANDOM, SORTED), default=RANDOM,
        help="tuple order for insert/search/delete",
    )
    parser.add_argument(
        "--balance", choices=_BALANCE_LABELS, default="avl1",
        help="balance criterion",
    )
    parser.add_argument(
        "--replacement",
        choices=(HIGHER_SUBTREE, ALWAYS_SUCCESSOR),
        default=HIGHER_SUBTREE,
        help="replacement choice for deleted two-child nodes",
    )
    parser.add_argument("--workers", type=int, default=1, help="rebuild worker threads")
    parser.add_argument(
        "--rebuild-threshold",
        type=int,
        default=PARALLEL_THRESHOLD,
        help="sub-problem size a rebuild split must exceed to go parallel",
    )
    parser.add_argument("--repeats", type=int, default=5, help="repeats per phase")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="dataset seed")
    parser.add_argument(
        "--csv", default="-", metavar="PATH", help="CSV output path ('-' = stdout)"
    )
    parser.add_argument(
        "--backend",
        choices=(AUTO, COMPILED, PURE),
        default=AUTO,
        help="kernel backend to benchmark",
    )
    parser.add_argument(
        "--compare-backends",
        action="store_true",
        help="run identical work on every available backend and print a summary",
    )
    return parser


def _config(args, backend=None):
    return BenchConfig(
        k=args.k,
        targets=args.targets,
        ns=args.n,
        pattern=args.pattern,
        policy=BalancePolicy.from_label(args.balance),
        strategy=args.replacement,
        workers=args.workers,
        parallel_threshold=args.rebuild_threshold,
        repeats=args.repeats,
        seed=args.seed,
        backend=backend if backend is not None else args.backend,
    )


def _print_comparison(results, out):
    names = list(results)
    keyed = {
        name: {(r.operation, r.n): r.mean_s for r in recs}
        for name, recs in results.items()
    }
    base = names[0]
    header = ["operation", "n"] + [f"{name}_s" for name in names]
    if len(names) > 1:
        header.append("speedup")
    print("  ".join(f"{h:>14}" for h in header), file=out)
    for key in keyed[base]:
        op, n = key
        cells = [f"{op:>14}", f"{n:>14}"]
        cells += [f"{keyed[name][key]:>14.6f}" for name in names]
        if len(names) > 1:
            ratio = keyed[names[0]][key] / max(keyed[names[-1]][key], 1e-12)
            cells.append(f"{ratio:>14.2f}")
        print("  ".join(cells), file=out)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.compare_backends:
            results = compare_backends(_config(args, backend=PURE), available_backends())
            if not HAVE_COMPILED:
                print("note: compiled backend unavailable, pure only", file=sys.stderr)
            _print_comparison(results, sys.stdout)
            return 0
        records = run_suite(_config(args))
    except BenchmarkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.csv == "-":
        write_csv(records, sys.stdout)
    else:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                write_csv(records, fh)
        except OSError as exc:
            print(f"error: cannot write CSV to {args.csv}: {exc}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
