"""Wall-clock comparison of the Bell and composition-weight strategies.

Composition strategies are timed on the symbolic weights ``x_s / s!``, so
every strategy produces (a scalar multiple of) ``B_{n,k}`` and the term counts
are comparable across rows.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from . import bell as B
from . import compositions as C
from .ring import MultiPoly

CSV_COLUMNS = ("strategy", "n", "k", "wall_time_ns", "term_count")


@dataclass(frozen=True)
class BenchRecord:
    strategy: str
    n: int
    k: int
    wall_time_ns: int
    term_count: int


def _weight_runner(fn: Callable[[C.WeightFunction, int, int], object]) -> Callable[[int, int], object]:
    def run(n: int, k: int):
        return fn(B.corollary1_weight(n, k), k, n)
    return run


# strategy -> (runner, applicability predicate on (n, k))
BENCH_STRATEGIES: Dict[str, tuple] = {
    "direct": (B.bell_direct, lambda n, k: True),
    "compositions": (B.bell_from_compositions, lambda n, k: True),
    "id1": (B.bell_by_id1, lambda n, k: n > k >= 1),
    "id2": (B.STRATEGIES["id2"], lambda n, k: True),
    "id3": (B.STRATEGIES["id3"], lambda n, k: True),
    "id4": (B.bell_by_id4, lambda n, k: k >= 1),
    "id5": (B.bell_by_id5, lambda n, k: n >= 1 and k >= 1),
    "id6": (B.bell_by_id6, lambda n, k: True),
    "enumerate": (_weight_runner(C.weight_by_enumeration), lambda n, k: True),
    "partitions": (_weight_runner(C.weight_by_partitions), lambda n, k: True),
    "convolution": (_weight_runner(C.weight_by_convolution), lambda n, k: True),
    "weighted-conv": (_weight_runner(C.weight_by_weighted_conv), lambda n, k: n >= 1 and k >= 1),
    "part-removal": (
        _weight_runner(lambda f, k, n: C.weight_by_part_removal(f, 1, k, n)),
        lambda n, k: True,
    ),
}

DEFAULT_STRATEGIES = ("direct", "compositions", "enumerate", "convolution")


def time_call(fn: Callable[[], object], repetitions: int) -> tuple:
    """Minimum wall time in ns over ``repetitions`` calls, and the last result."""
    best = None
    result = None
    for _ in range(max(1, repetitions)):
        t0 = time.perf_counter_ns()
        result = fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def iter_bench(
    n_max: int,
    strategies: Sequence[str] = DEFAULT_STRATEGIES,
    repetitions: int = 3,
    cells: Optional[Sequence[tuple]] = None,
) -> Iterator[BenchRecord]:
    """Yield one record per (strategy, n, k), strategies in the given order.

    Cells default to every ``0 <= k <= n <= n_max``; cells outside a
    strategy's domain are skipped.
    """
    unknown = [s for s in strategies if s not in BENCH_STRATEGIES]
    if unknown:
        raise ValueError(f"unknown bench strategies: {', '.join(unknown)}")
    if cells is None:
        cells = [(n, k) for n in range(n_max + 1) for k in range(n + 1)]
    for name in strategies:
        fn, applies = BENCH_STRATEGIES[name]
        for n, k in cells:
            if not applies(n, k):
                continue
            ns, value = time_call(lambda: fn(n, k), repetitions)
            yield BenchRecord(name, n, k, ns, len(MultiPoly.coerce(value)))


def run_bench(n_max: int, strategies: Sequence[str] = DEFAULT_STRATEGIES, repetitions: int = 3) -> List[BenchRecord]:
    return list(iter_bench(n_max, strategies, repetitions))


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(astuple(r))
    return buf.getvalue()


def records_to_text(records: Sequence[BenchRecord]) -> str:
    rows = [CSV_COLUMNS] + [tuple(str(v) for v in astuple(r)) for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(CSV_COLUMNS))]
    return "\n".join("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows) + "\n"


def records_to_json(records: Sequence[BenchRecord]) -> list:
    names = [f.name for f in fields(BenchRecord)]
    return [dict(zip(names, astuple(r))) for r in records]
