"""Partial Bell polynomials ``B_{n,k}(x_1, ..., x_{n-k+1})``.

``bell_direct`` sums over part-count vectors and is the reference for every
other route. The identity-based routes take an ``inner`` argument choosing how
their sub-Bell values are obtained: ``"direct"`` evaluates them with
``bell_direct`` so each identity is checked against the definition alone,
``"self"`` recurses through the same identity with a per-call memo. The
one-step identities (id2, id4, id5) default to ``"direct"``; id1 is a
recurrence in n and defaults to ``"self"``.

Boundary conventions: ``B_{0,0} = 1``, ``B_{n,0} = 0`` for n > 0 and
``B_{n,k} = 0`` for k > n.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Dict, Iterator, Mapping, Tuple

from .compositions import (
    PreconditionError,
    WeightFunction,
    weight_by_convolution,
    weight_fn_zero_at,
)
from .ring import (
    MultiPoly,
    Scalar,
    binomial,
    make_monomial,
    poly_extract_factor,
    ring_sum,
)

BellValue = MultiPoly

ZERO = MultiPoly.constant(0)
ONE = MultiPoly.constant(1)


def _x(i: int) -> MultiPoly:
    return MultiPoly.var(i)


class BellCache:
    """Thread-safe (n, k) -> B_{n,k} map shared across calls.

    Off by default; pass one to ``bell_direct`` to reuse values between
    top-level calls. A value is computed at most once.
    """

    def __init__(self):
        self._values: Dict[Tuple[int, int], MultiPoly] = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key: Tuple[int, int], compute: Callable[[], MultiPoly]) -> MultiPoly:
        with self._lock:
            if key in self._values:
                return self._values[key]
            value = compute()
            self._values[key] = value
            return value

    def __len__(self) -> int:
        return len(self._values)


def corollary1_weight(n: int, k: int) -> WeightFunction:
    """Symbolic weights ``f(s) = x_s / s!`` for ``1 <= s <= n-k+1``, zero elsewhere.

    With these weights ``(k!/n!) B_{n,k} = W_f(k, n)``. For n = k = 0 the
    support is empty.
    """
    if k > n or k < 0:
        raise PreconditionError(f"symbolic Bell weights need n >= k >= 0, got n={n}, k={k}")
    if n == 0:
        f = WeightFunction({})
        f.symbolic = True
        return f
    return WeightFunction(
        {s: MultiPoly.var(s, Fraction(1, math.factorial(s))) for s in range(1, n - k + 2)}
    )


def _bell_partitions(n: int, k: int) -> Iterator[Dict[int, int]]:
    # part-count vectors l_1..l_{n-k+1}, largest part first
    counts: Dict[int, int] = {}

    def rec(size: int, parts_left: int, total_left: int) -> Iterator[Dict[int, int]]:
        if parts_left == 0:
            if total_left == 0:
                yield dict(counts)
            return
        if size == 0 or total_left < parts_left or total_left > parts_left * size:
            return
        for c in range(min(parts_left, total_left // size), -1, -1):
            if c:
                counts[size] = c
            yield from rec(size - 1, parts_left - c, total_left - size * c)
            counts.pop(size, None)

    yield from rec(n - k + 1, k, n)


def _bell_direct(n: int, k: int) -> MultiPoly:
    if n < 0 or k < 0 or k > n:
        return ZERO
    if k == 0:
        return ONE if n == 0 else ZERO
    terms = {}
    nfact = math.factorial(n)
    for counts in _bell_partitions(n, k):
        denom = 1
        for s, c in counts.items():
            denom *= math.factorial(c) * math.factorial(s) ** c
        terms[make_monomial(counts)] = nfact // denom
    return MultiPoly(terms)


def bell_direct(n: int, k: int, cache: BellCache | None = None) -> BellValue:
    """``sum n!/(prod l_s!) prod (x_s/s!)^{l_s}`` over the part-count vectors of n into k parts."""
    if cache is None:
        return _bell_direct(n, k)
    return cache.get_or_compute((n, k), lambda: _bell_direct(n, k))


def bell_from_compositions(n: int, k: int) -> BellValue:
    """``(n!/k!) W_f(k, n)`` with the weights of :func:`corollary1_weight`."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    w = weight_by_convolution(corollary1_weight(n, k), k, n)
    return MultiPoly.coerce(w) * Fraction(math.factorial(n), math.factorial(k))


def _bell_restricted_x1_zero(m: int, j: int) -> MultiPoly:
    """``B_{m,j}(0, x_2, ...)`` through the weights with f(1) removed."""
    if m < 0 or j < 0 or j > m:
        return ZERO
    f = weight_fn_zero_at(corollary1_weight(m, j), 1)
    w = weight_by_convolution(f, j, m)
    return MultiPoly.coerce(w) * Fraction(math.factorial(m), math.factorial(j))


def _inner_source(inner: str, recurse: Callable[[int, int], MultiPoly]) -> Callable[[int, int], MultiPoly]:
    if inner == "direct":
        memo: Dict[Tuple[int, int], MultiPoly] = {}

        def lookup(n: int, k: int) -> MultiPoly:
            if (n, k) not in memo:
                memo[n, k] = bell_direct(n, k)
            return memo[n, k]

        return lookup
    if inner == "self":
        return recurse
    raise ValueError(f"inner must be 'direct' or 'self', got {inner!r}")


def bell_by_id1(n: int, k: int, inner: str = "self") -> BellValue:
    """De Pril form: for n > k >= 1,

    ``B_{n,k} = 1/(x_1 (n-k)) sum_{a=1}^{n-k} C(n,a) [(k+1) - (n+1)/(a+1)] x_{a+1} B_{n-a,k}``

    The division by ``x_1`` is exact factor extraction. ``n == k`` returns the
    base value ``x_1^k``.
    """
    if k < 1 or n < k:
        raise PreconditionError(f"id1 needs n >= k >= 1, got n={n}, k={k}")
    memo: Dict[int, MultiPoly] = {k: _x(1) ** k}

    def rec(m: int, kk: int) -> MultiPoly:
        if m not in memo:
            memo[m] = step(m)
        return memo[m]

    sub = _inner_source(inner, rec)

    def step(m: int) -> MultiPoly:
        acc = ring_sum(
            (
                binomial(m, a) * (k + 1 - Fraction(m + 1, a + 1)) * _x(a + 1) * sub(m - a, k)
                for a in range(1, m - k + 1)
            ),
            ZERO,
        )
        return poly_extract_factor(acc / (m - k), 1)

    if n == k:
        return memo[k]
    return step(n)


def bell_by_id2(n: int, k1: int, k2: int, inner: str = "direct") -> BellValue:
    """``B_{n,k1+k2} = k1! k2!/(k1+k2)! sum_a C(n,a) B_{a,k1} B_{n-a,k2}``.

    With ``inner="self"`` each factor is split again until ``k <= 1``, where
    ``B_{m,1} = x_m`` and ``B_{m,0} = [m == 0]``.
    """
    if min(n, k1, k2) < 0:
        return ZERO
    memo: Dict[Tuple[int, int], MultiPoly] = {}

    def rec(m: int, j: int) -> MultiPoly:
        if j > m:
            return ZERO
        if j == 0:
            return ONE if m == 0 else ZERO
        if j == 1:
            return _x(m)
        if (m, j) not in memo:
            memo[m, j] = split(m, j // 2, j - j // 2)
        return memo[m, j]

    sub = _inner_source(inner, rec)

    def split(m: int, j1: int, j2: int) -> MultiPoly:
        acc = ring_sum((binomial(m, a) * sub(a, j1) * sub(m - a, j2) for a in range(m + 1)), ZERO)
        return acc * Fraction(math.factorial(j1) * math.factorial(j2), math.factorial(j1 + j2))

    return split(n, k1, k2)


def bell_by_id3(n: int, k: int) -> BellValue:
    """``B_{n,k+1}`` as a k-fold nested sum over chains ``n > a_1 > ... > a_k >= 1``.

    Each chain contributes ``C(n,a_1) C(a_1,a_2) ... C(a_{k-1},a_k)`` times
    ``x_{n-a_1} x_{a_1-a_2} ... x_{a_{k-1}-a_k} x_{a_k}``; the total is
    divided by ``(k+1)!``.
    """
    if k < 0 or n < 0:
        return ZERO
    if k + 1 > n:
        return ZERO
    memo: Dict[Tuple[int, int], MultiPoly] = {}

    def chains(top: int, depth: int) -> MultiPoly:
        # sum over a_1 > ... > a_depth >= 1 below `top`, closing with x_{a_depth}
        if depth == 0:
            return _x(top)
        key = (top, depth)
        if key not in memo:
            memo[key] = ring_sum(
                (
                    binomial(top, a) * _x(top - a) * chains(a, depth - 1)
                    for a in range(depth, top)
                ),
                ZERO,
            )
        return memo[key]

    return chains(n, k) * Fraction(1, math.factorial(k + 1))


def bell_by_id4(n: int, k: int, inner: str = "direct") -> BellValue:
    """``B_{n,k} = 1/k sum_{a>=1} C(n,a) x_a B_{n-a,k-1}`` (no ``x_0``: the a = 0 term vanishes)."""
    if k < 1:
        raise PreconditionError(f"id4 needs k >= 1, got k={k}")
    if n < 0:
        return ZERO
    memo: Dict[Tuple[int, int], MultiPoly] = {}

    def rec(m: int, j: int) -> MultiPoly:
        if j == 0:
            return ONE if m == 0 else ZERO
        if j > m:
            return ZERO
        if (m, j) not in memo:
            memo[m, j] = step(m, j)
        return memo[m, j]

    sub = _inner_source(inner, rec)

    def step(m: int, j: int) -> MultiPoly:
        acc = ring_sum(
            (binomial(m, a) * _x(a) * sub(m - a, j - 1) for a in range(1, m - j + 2)),
            ZERO,
        )
        return acc * Fraction(1, j)

    if k > n:
        return ZERO
    return step(n, k)


def bell_by_id5(n: int, k: int, inner: str = "direct") -> BellValue:
    """``B_{n,k} = sum_{a>=1} C(n-1,a-1) x_a B_{n-a,k-1}``."""
    if k < 1 or n < 1:
        raise PreconditionError(f"id5 needs n >= 1 and k >= 1, got n={n}, k={k}")
    memo: Dict[Tuple[int, int], MultiPoly] = {}

    def rec(m: int, j: int) -> MultiPoly:
        if j == 0:
            return ONE if m == 0 else ZERO
        if j > m:
            return ZERO
        if (m, j) not in memo:
            memo[m, j] = step(m, j)
        return memo[m, j]

    sub = _inner_source(inner, rec)

    def step(m: int, j: int) -> MultiPoly:
        return ring_sum(
            (binomial(m - 1, a - 1) * _x(a) * sub(m - a, j - 1) for a in range(1, m - j + 2)),
            ZERO,
        )

    if k > n:
        return ZERO
    return step(n, k)


def bell_by_id6(n: int, k: int) -> BellValue:
    """``B_{n,k} = sum_a C(n,a) x_1^a B_{n-a,k-a}(0, x_2, ...)``."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return ring_sum(
        (
            binomial(n, a) * _x(1) ** a * _bell_restricted_x1_zero(n - a, k - a)
            for a in range(k + 1)
        ),
        ZERO,
    )


STRATEGIES: Dict[str, Callable[[int, int], MultiPoly]] = {
    "direct": bell_direct,
    "compositions": bell_from_compositions,
    "id1": bell_by_id1,
    "id2": lambda n, k: bell_by_id2(n, k // 2, k - k // 2),
    "id3": lambda n, k: bell_by_id3(n, k - 1) if k >= 1 else (ONE if n == 0 else ZERO),
    "id4": bell_by_id4,
    "id5": bell_by_id5,
    "id6": bell_by_id6,
}


def bell_by_strategy(n: int, k: int, strategy: str = "direct") -> BellValue:
    """Dispatch to a named strategy. ``id2`` splits k as evenly as possible."""
    try:
        fn = STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown Bell strategy {strategy!r}; choose from {', '.join(STRATEGIES)}") from None
    return fn(n, k)


def bell_eval(value: MultiPoly, assignment: Mapping[int, Scalar]) -> Fraction:
    """Substitute rationals for the indeterminates; every occurring ``x_i`` must be assigned."""
    return MultiPoly.coerce(value).evaluate(assignment)


def stirling2(n: int, k: int, strategy: str = "direct") -> Fraction:
    """S(n, k) as ``B_{n,k}(1, ..., 1)``."""
    value = bell_by_strategy(n, k, strategy)
    return bell_eval(value, {i: 1 for i in value.indeterminates()})
