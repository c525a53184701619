"""Timed insert/verify/search/delete/static-build experiments.

Each configured tree size runs the five phases on the same dataset,
repeats them a configurable number of times, and reports mean and
standard deviation per phase plus the largest subtree rebuilt during the
insert and delete phases.  Every non-timing output field is deterministic
for a fixed configuration.
"""

import csv
import io
import time
from dataclasses import dataclass, field
from math import log2
from statistics import fmean, pstdev

from ._backend import AUTO
from .dataset import DEFAULT_SEED, generate_random, generate_sorted, solve_n
from .policy import BalancePolicy, HIGHER_SUBTREE
from .rebuild import PARALLEL_THRESHOLD
from .tree import KdTree

RANDOM = "random"
SORTED = "sorted"

OPERATIONS = ("insert", "verify", "search", "delete", "static_build")

CSV_HEADER = (
    "operation",
    "n",
    "pattern",
    "policy",
    "strategy",
    "workers",
    "mean_s",
    "stddev_s",
    "largest_rebuild",
    "tree_height",
)


class BenchmarkError(RuntimeError):
    """A benchmarked tree failed validation; timings would be meaningless."""


@dataclass
class BenchConfig:
    k: int = 3
    targets: list = None
    ns: list = None  # explicit sizes; overrides targets
    pattern: str = RANDOM
    policy: BalancePolicy = field(default_factory=lambda: BalancePolicy.avl(1))
    strategy: str = HIGHER_SUBTREE
    workers: int = 1
    parallel_threshold: int = PARALLEL_THRESHOLD
    repeats: int = 5
    seed: int = DEFAULT_SEED
    backend: str = AUTO

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.pattern not in (RANDOM, SORTED):
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if not self.ns and not self.targets:
            raise ValueError("provide explicit sizes (ns) or n*log2(n) targets")

    def sizes(self):
        ns = list(self.ns) if self.ns else [solve_n(t) for t in self.targets]
        if any(n < 1 for n in ns):
            raise ValueError("all tree sizes must be >= 1")
        return ns


@dataclass
class BenchRecord:
    operation: str
    n: int
    pattern: str
    policy: str
    strategy: str
    workers: int
    mean_s: float
    stddev_s: float
    largest_rebuild: int
    tree_height: int

    def row(self):
        return (
            self.operation,
            str(self.n),
            self.pattern,
            self.policy,
            self.strategy,
            str(self.workers),
            f"{self.mean_s:.6f}",
            f"{self.stddev_s:.6f}",
            str(self.largest_rebuild),
            str(self.tree_height),
        )


def _dataset(config, n):
    if config.pattern == SORTED:
        return generate_sorted(n, config.k, config.seed)
    return generate_random(n, config.k, config.seed)


def _new_tree(config):
    return KdTree(
        config.k,
        policy=config.policy,
        strategy=config.strategy,
        workers=config.workers,
        parallel_threshold=config.parallel_threshold,
        backend=config.backend,
    )


def _check(report, n, phase):
    if not report.ok:
        raise BenchmarkError(
            f"verification failed after {phase} at n={n}:\n{report.describe()}"
        )


def run_size(config, n, data=None):
    """Run all phases for one tree size; returns a list of BenchRecord."""
    if data is None:
        data = _dataset(config, n)
    times = {op: [] for op in OPERATIONS}
    largest_insert = 0
    largest_delete = 0
    tree_height = 0
    static_height = 0

    for _ in range(config.repeats):
        tree = _new_tree(config)
        tree.reset_stats()
        t0 = time.perf_counter()
        for pt in data:
            tree.insert(pt)
        times["insert"].append(time.perf_counter() - t0)
        largest_insert = max(largest_insert, tree.largest_rebuild)
        tree_height = tree.height

        t0 = time.perf_counter()
        report = tree.verify()
        times["verify"].append(time.perf_counter() - t0)
        _check(report, n, "insert")

        t0 = time.perf_counter()
        found = 0
        for pt in data:
            found += tree.contains(pt)
        times["search"].append(time.perf_counter() - t0)
        if found != n:
            raise BenchmarkError(f"search found {found} of {n} tuples at n={n}")

        tree.reset_stats()
        t0 = time.perf_counter()
        for pt in data:
            tree.delete(pt)
        times["delete"].append(time.perf_counter() - t0)
        largest_delete = max(largest_delete, tree.largest_rebuild)
        if tree.size != 0:
            raise BenchmarkError(f"{tree.size} tuples left after delete-all at n={n}")

        t0 = time.perf_counter()
        static = KdTree.from_tuples(
            data,
            config.k,
            policy=config.policy,
            strategy=config.strategy,
            workers=config.workers,
            parallel_threshold=config.parallel_threshold,
            backend=config.backend,
        )
        times["static_build"].append(time.perf_counter() - t0)
        static_height = static.height
    _check(static.verify(), n, "static build")

    heights = {
        "insert": tree_height,
        "verify": tree_height,
        "search": tree_height,
        "delete": tree_height,
        "static_build": static_height,
    }
    rebuilds = {"insert": largest_insert, "delete": largest_delete}
    return [
        BenchRecord(
            operation=op,
            n=n,
            pattern=config.pattern,
            policy=config.policy.label,
            strategy=config.strategy,
            workers=config.workers,
            mean_s=fmean(times[op]),
            stddev_s=pstdev(times[op]),
            largest_rebuild=rebuilds.get(op, 0),
            tree_height=heights[op],
        )
        for op in OPERATIONS
    ]


def run_suite(config):
    """Run all phases for every configured size."""
    records = []
    for n in config.sizes():
        records.extend(run_size(config, n))
    return records


def write_csv(records, stream):
    """Emit records as UTF-8 CSV with newline-terminated rows."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())


def csv_text(records):
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def fit_nlogn(ns, seconds):
    """Least-squares fit of t = c * n * log2(n) through the origin.

    Returns (c, r_squared) with the conventional mean-anchored R**2.
    """
    xs = [n * log2(n) for n in ns]
    c = sum(x * t for x, t in zip(xs, seconds)) / sum(x * x for x in xs)
    mean_t = fmean(seconds)
    ss_tot = sum((t - mean_t) ** 2 for t in seconds)
    ss_res = sum((t - c * x) ** 2 for x, t in zip(xs, seconds))
    if ss_tot == 0:
        return c, 1.0 if ss_res == 0 else 0.0
    return c, 1.0 - ss_res / ss_tot


def compare_backends(config, backends):
    """Run the suite once per backend; returns {backend: records}.

    Intended for judging the compiled kernel against the pure fallback on
    identical work; non-timing fields must agree across backends.
    """
    results = {}
    for name in backends:
        cfg = BenchConfig(
            k=config.k,
            targets=config.targets,
            ns=config.ns,
            pattern=config.pattern,
            policy=config.policy,
            strategy=config.strategy,
            workers=config.workers,
            parallel_threshold=config.parallel_threshold,
            repeats=config.repeats,
            seed=config.seed,
            backend=name,
        )
        results[name] = run_suite(cfg)
    return results
