"""Identity sweeps: every route is compared against its reference over a range of (n, k)."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from . import bell as B
from . import compositions as C
from . import stochastic as S
from .ring import render

SUITES = (
    "theorem1",
    "lemma2",
    "lemma3",
    "id1",
    "id2",
    "id3",
    "id4",
    "id5",
    "id6",
    "stirling",
    "stochastic",
)

# colored-composition example: two colors of 0, one each of 1 and 2
EXAMPLE_F = C.WeightFunction({0: 2, 1: 1, 2: 1})
# signed rational weights with f(0) = 0 and f(1) != 0, for the n-recurrence
DEPRIL_F = C.WeightFunction({1: Fraction(3, 2), 2: Fraction(-2, 5), 3: 7, 4: Fraction(1, 3)})
# general rational weights including f(0)
MIXED_F = C.WeightFunction({0: Fraction(1, 2), 1: 3, 2: Fraction(-2, 3), 3: Fraction(5, 7)})


@dataclass
class Check:
    suite: str
    name: str
    n: int
    k: int
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    n_max: int
    k_max: int
    checks: List[Check] = field(default_factory=list)
    elapsed_ms: float = 0.0
    exponent_probe: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "range": [self.n_max, self.k_max],
            "checks": [asdict(c) for c in self.checks],
            "elapsed_ms": round(self.elapsed_ms, 3),
            "normalization_exponent": self.exponent_probe,
        }


def _run_check(suite: str, name: str, n: int, k: int, got: Callable, want: Callable) -> Check:
    try:
        lhs = got()
        rhs = want()
    except Exception as exc:  # a raising route is a failed check, not a crash
        return Check(suite, name, n, k, False, f"{type(exc).__name__}: {exc}")
    if lhs == rhs:
        return Check(suite, name, n, k, True)
    return Check(suite, name, n, k, False, f"got {render(lhs)}; expected {render(rhs)}")


def _stirling_triangle(n_max: int) -> List[List[int]]:
    tri = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    tri[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            tri[n][k] = k * tri[n - 1][k] + tri[n - 1][k - 1]
    return tri


def checks_for(suite: str, n: int, k: int) -> List[Check]:
    """All checks of one suite at one index pair."""
    out: List[Check] = []

    def add(name: str, got: Callable, want: Callable) -> None:
        out.append(_run_check(suite, name, n, k, got, want))

    rational = (("example", EXAMPLE_F), ("mixed", MIXED_F))
    bell_ref = lambda: B.bell_direct(n, k)  # noqa: E731

    if suite == "theorem1":
        for label, f in rational:
            oracle = C.weight_by_enumeration(f, k, n)
            add(f"partitions[{label}]", lambda f=f: C.weight_by_partitions(f, k, n), lambda o=oracle: o)
            add(f"convolution[{label}]", lambda f=f: C.weight_by_convolution(f, k, n), lambda o=oracle: o)
        add("bell-bridge", lambda: B.bell_from_compositions(n, k), bell_ref)
    elif suite == "lemma2":
        for label, f in rational:
            whole = C.weight_by_convolution(f, k, n)
            for k1 in range(k + 1):
                add(
                    f"split[{label},{k1}+{k - k1}]",
                    lambda f=f, k1=k1: C.weight_convolve_split(f, k1, k - k1, n),
                    lambda w=whole: w,
                )
    elif suite == "lemma3":
        add("depril", lambda: C.weight_by_depril(DEPRIL_F, k, n), lambda: C.weight_by_enumeration(DEPRIL_F, k, n))
    elif suite == "id1":
        if n > k >= 1:
            add("id1", lambda: B.bell_by_id1(n, k), bell_ref)
    elif suite == "id2":
        ref = B.bell_direct(n, k)
        for k1 in range(k + 1):
            add(f"split[{k1}+{k - k1}]", lambda k1=k1: B.bell_by_id2(n, k1, k - k1), lambda: ref)
    elif suite == "id3":
        if k >= 1:
            add("id3", lambda: B.bell_by_id3(n, k - 1), bell_ref)
    elif suite == "id4":
        if k >= 1:
            add("id4", lambda: B.bell_by_id4(n, k), bell_ref)
        for label, f in rational:
            add(f"convolution[{label}]", lambda f=f: C.weight_by_convolution(f, k, n), lambda f=f: C.weight_by_partitions(f, k, n))
    elif suite == "id5":
        if n >= 1 and k >= 1:
            add("id5", lambda: B.bell_by_id5(n, k), bell_ref)
            for label, f in rational:
                add(f"weighted-conv[{label}]", lambda f=f: C.weight_by_weighted_conv(f, k, n), lambda f=f: C.weight_by_enumeration(f, k, n))
    elif suite == "id6":
        add("id6", lambda: B.bell_by_id6(n, k), bell_ref)
        oracle = C.weight_by_enumeration(MIXED_F, k, n)
        for r in range(4):
            add(f"part-removal[mixed,r={r}]", lambda r=r: C.weight_by_part_removal(MIXED_F, r, k, n), lambda: oracle)
    elif suite == "stirling":
        want = _stirling_triangle(n)[n][k]
        add("stirling2", lambda: B.stirling2(n, k), lambda: Fraction(want))
    elif suite == "stochastic":
        norm = S.normalize(EXAMPLE_F)
        add(
            "normalized[exponent=k]",
            lambda: S.weight_from_pmf(norm.pmf, norm.total, k, n),
            lambda: C.weight_by_enumeration(EXAMPLE_F, k, n),
        )
        g = S.normalize(C.WeightFunction({0: 1, 1: Fraction(1, 3), 2: Fraction(5, 2)})).pmf
        add("pmf-convolution", lambda: S.sum_pmf(g, k)(n), lambda: C.weight_by_convolution(C.WeightFunction(g.mass), k, n))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def _task(args: Tuple[str, int, int]) -> List[Check]:
    return checks_for(*args)


def _exponent_probe(n_max: int, k_max: int) -> Tuple[Dict[str, Dict[str, int]], List[Check]]:
    """Compare total**k against total**n as the pmf-to-weight scaling.

    Uses the colored-composition example, whose normalization constant is 4.
    """
    norm = S.normalize(EXAMPLE_F)
    tally = {"k": {"cases": 0, "mismatches": 0}, "n": {"cases": 0, "mismatches": 0}}
    informative = False
    for n in range(n_max + 1):
        for k in range(min(n, k_max) + 1):
            want = C.weight_by_enumeration(EXAMPLE_F, k, n)
            for exp in ("k", "n"):
                tally[exp]["cases"] += 1
                if S.weight_from_pmf(norm.pmf, norm.total, k, n, exponent=exp) != want:
                    tally[exp]["mismatches"] += 1
            if k != n and want:
                informative = True
    checks = []
    if informative:
        checks.append(Check(
            "stochastic", "exponent-n-refuted", n_max, k_max,
            tally["n"]["mismatches"] > 0,
            f"exponent k: {tally['k']['mismatches']}/{tally['k']['cases']} mismatches; "
            f"exponent n: {tally['n']['mismatches']}/{tally['n']['cases']} mismatches",
        ))
    return tally, checks


def run_verify(
    n_max: int,
    k_max: int | None = None,
    suites: Sequence[str] = SUITES,
    jobs: int = 1,
) -> VerifyReport:
    """Run the selected suites over ``0 <= k <= n <= n_max`` with ``k <= k_max``."""
    if k_max is None:
        k_max = n_max
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(sorted(unknown))}")
    start = time.perf_counter()
    tasks = [
        (suite, n, k)
        for suite in suites
        for n in range(n_max + 1)
        for k in range(min(n, k_max) + 1)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, tasks, chunksize=4))
    else:
        results = [_task(t) for t in tasks]
    checks = [c for batch in results for c in batch]
    report = VerifyReport(n_max, k_max)
    if "stochastic" in suites:
        report.exponent_probe, extra = _exponent_probe(n_max, k_max)
        checks.extend(extra)
    order = {s: i for i, s in enumerate(SUITES)}
    checks.sort(key=lambda c: (order[c.suite], c.n, c.k, c.name))
    report.checks = checks
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report
