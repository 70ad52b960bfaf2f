"""Exit criteria. Each test is one criterion; the summary prints PASS/FAIL per line."""

import io
import random
import time
from fractions import Fraction

import pytest

from bellcomp.bell import (
    bell_by_id1,
    bell_by_id2,
    bell_by_id3,
    bell_by_id4,
    bell_by_id5,
    bell_by_id6,
    bell_direct,
    bell_eval,
    bell_from_compositions,
)
from bellcomp.cli import main
from bellcomp.compositions import (
    WeightFunction,
    enumerate_compositions,
    weight_by_convolution,
    weight_by_depril,
    weight_by_enumeration,
    weight_by_part_removal,
    weight_by_partitions,
    weight_by_weighted_conv,
    weight_convolve_split,
)
from bellcomp.ring import total_degree, weighted_degree
from bellcomp.stochastic import normalize, weight_from_pmf
from bellcomp.verify import run_verify

EXAMPLE = WeightFunction({0: 2, 1: 1, 2: 1})


def stirling_triangle(n_max):
    s = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    s[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1]
    return s


@pytest.mark.criterion("colored example: five strategies give 9, six uncolored patterns")
def test_colored_composition_example():
    norm = normalize(EXAMPLE)
    values = {
        "enumeration": weight_by_enumeration(EXAMPLE, 3, 4),
        "partitions": weight_by_partitions(EXAMPLE, 3, 4),
        "convolution": weight_by_convolution(EXAMPLE, 3, 4),
        "weighted-conv": weight_by_weighted_conv(EXAMPLE, 3, 4),
        "pmf": weight_from_pmf(norm.pmf, norm.total, 3, 4),
    }
    assert values == dict.fromkeys(values, 9)
    assert list(enumerate_compositions(4, 3, 2)) == [
        (0, 2, 2), (1, 1, 2), (1, 2, 1), (2, 0, 2), (2, 1, 1), (2, 2, 0),
    ]


@pytest.mark.criterion("seven-way Bell agreement for 0 <= k <= n <= 12, exact")
def test_seven_way_bell_agreement():
    start = time.perf_counter()
    mismatches = []
    for n in range(13):
        for k in range(n + 1):
            ref = bell_direct(n, k)
            routes = {"compositions": bell_from_compositions(n, k), "id6": bell_by_id6(n, k)}
            if k >= 1:
                routes["id3"] = bell_by_id3(n, k - 1)
                routes["id4"] = bell_by_id4(n, k)
                routes["id4/self"] = bell_by_id4(n, k, inner="self")
            if n >= 1 and k >= 1:
                routes["id5"] = bell_by_id5(n, k)
                routes["id5/self"] = bell_by_id5(n, k, inner="self")
            if n > k >= 1:
                routes["id1"] = bell_by_id1(n, k)
                routes["id1/direct"] = bell_by_id1(n, k, inner="direct")
            for k1 in range(k + 1):
                routes[f"id2[{k1}+{k - k1}]"] = bell_by_id2(n, k1, k - k1)
                routes[f"id2/self[{k1}+{k - k1}]"] = bell_by_id2(n, k1, k - k1, inner="self")
            mismatches += [(n, k, name) for name, v in routes.items() if v != ref]
    assert not mismatches
    assert time.perf_counter() - start < 120


def _random_rational_weight(rng):
    values = {}
    for s in range(7):
        if rng.random() < 0.6:
            values[s] = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    if rng.random() < 0.5:
        # half the cases satisfy the n-recurrence preconditions
        values.pop(0, None)
        values[1] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 7))
    return WeightFunction(values)


@pytest.mark.criterion("oracle equivalence: 200 random weight functions, k, n <= 8")
def test_oracle_equivalence_for_compositions():
    rng = random.Random(20151)
    start = time.perf_counter()
    depril_cases = 0
    for _ in range(200):
        f = _random_rational_weight(rng)
        depril_ok = 0 not in f and bool(f(1))
        for k in range(9):
            for n in range(9):
                want = weight_by_enumeration(f, k, n)
                assert weight_by_partitions(f, k, n) == want
                assert weight_by_convolution(f, k, n) == want
                assert weight_convolve_split(f, k // 2, k - k // 2, n) == want
                if k >= 1 and n >= 1:
                    assert weight_by_weighted_conv(f, k, n) == want
                for r in range(7):
                    assert weight_by_part_removal(f, r, k, n) == want
                if depril_ok and n >= k:
                    assert weight_by_depril(f, k, n) == want
                    depril_cases += 1
    assert depril_cases > 0
    assert time.perf_counter() - start < 60


@pytest.mark.criterion("Stirling numbers from B_{n,k}(1,...,1) match the triangle for n <= 20")
def test_stirling_cross_check():
    tri = stirling_triangle(20)
    for n in range(21):
        for k in range(n + 1):
            value = bell_direct(n, k)
            assert bell_eval(value, {i: 1 for i in range(1, n + 2)}) == tri[n][k]


@pytest.mark.criterion("normalization exponent k reproduces the oracle; exponent n is refuted")
def test_lemma1_exponent_resolution():
    rng = random.Random(7)
    for _ in range(40):
        values = {s: Fraction(rng.randint(1, 9), rng.randint(1, 5)) for s in range(6) if rng.random() < 0.6}
        if not values:
            continue
        f = WeightFunction(values)
        norm = normalize(f)
        for k in range(9):
            for n in range(9):
                assert weight_from_pmf(norm.pmf, norm.total, k, n) == weight_by_enumeration(f, k, n)
    report = run_verify(8, suites=["stochastic"])
    assert report.ok
    assert report.exponent_probe["k"]["mismatches"] == 0
    assert report.exponent_probe["n"]["mismatches"] >= 1
    assert normalize(EXAMPLE).total != 1
    assert any(c.name == "exponent-n-refuted" and c.passed for c in report.checks)


@pytest.mark.criterion("every monomial of B_{n,k}, n <= 12: degree k, weight n, positive integer coefficient")
def test_degree_positivity_invariants():
    for n in range(13):
        for k in range(n + 1):
            for m, c in bell_direct(n, k).items():
                assert total_degree(m) == k
                assert weighted_degree(m) == n
                assert c > 0 and c.denominator == 1


@pytest.mark.criterion("bench --n-max 18: convolution beats enumeration for n >= 12 at k = n/2")
def test_benchmark_sanity():
    out = io.StringIO()
    assert main(["bench", "--n-max", "18", "--repetitions", "1"], out=out) == 0
    rows = [line.split(",") for line in out.getvalue().splitlines()[1:]]
    times = {(r[0], int(r[1]), int(r[2])): int(r[3]) for r in rows}
    cells = [(n, k) for n in range(19) for k in range(n + 1)]
    for strategy in ("direct", "compositions", "enumerate", "convolution"):
        assert all((strategy, n, k) in times for n, k in cells)
    for n in range(12, 19):
        k = n // 2
        assert times["convolution", n, k] < times["enumerate", n, k], (n, k)
