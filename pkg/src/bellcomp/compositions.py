"""Weighted integer compositions.

The total weight ``W_f(k, n)`` of all k-part compositions of n, each part of
size ``s`` weighted by ``f(s)``, computed several independent ways:

* ``weight_by_enumeration`` -- brute force over compositions (the oracle)
* ``weight_by_partitions`` -- sum over part-count vectors with multinomials
* ``weight_by_convolution`` -- the column recurrence
  ``W(k, n) = sum_s f(s) W(k-1, n-s)``
* ``weight_by_weighted_conv`` -- ``W(k, n) = k/n sum_s s f(s) W(k-1, n-s)``
* ``weight_by_depril`` -- the De Pril style recurrence in n (needs f(0) = 0)
* ``weight_by_part_removal`` -- strip one part size r and count its placements

Weights may be Fractions or MultiPoly values. Conventions: ``W(0, n) = [n == 0]``
and ``W(k, 0) = f(0)**k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Tuple

from .ring import (
    MultiPoly,
    RingElement,
    binomial,
    multinomial,
    ring_sum,
)

CompositionWeight = RingElement
Composition = Tuple[int, ...]
PartCountVector = Dict[int, int]


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class WeightFunction:
    """Finite-support map from part size ``s >= 0`` to a ring element ``f(s)``.

    Absent sizes have weight zero; zero values are dropped on construction.
    """

    __slots__ = ("_support", "symbolic")

    def __init__(self, values: Mapping[int, RingElement] | None = None):
        support: Dict[int, RingElement] = {}
        symbolic = False
        for s, v in (values or {}).items():
            s = int(s)
            if s < 0:
                raise ValueError(f"part size must be nonnegative, got {s}")
            if isinstance(v, MultiPoly):
                symbolic = True
            elif isinstance(v, (int, Fraction)):
                v = Fraction(v)
            else:
                raise TypeError(f"unsupported weight type {type(v).__name__}")
            if v:
                support[s] = v
        if symbolic:
            support = {s: MultiPoly.coerce(v) for s, v in support.items()}
        self._support = dict(sorted(support.items()))
        self.symbolic = symbolic

    @classmethod
    def indicator(cls, sizes, value: RingElement = 1) -> "WeightFunction":
        return cls({s: value for s in sizes})

    def __call__(self, s: int) -> RingElement:
        return self._support.get(s, self.zero())

    def __contains__(self, s: int) -> bool:
        return s in self._support

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self._support == other._support

    def __repr__(self) -> str:
        inner = ", ".join(f"{s}: {v}" for s, v in self._support.items())
        return f"WeightFunction({{{inner}}})"

    @property
    def support(self) -> Dict[int, RingElement]:
        return dict(self._support)

    @property
    def max_part(self) -> int:
        return max(self._support, default=0)

    def items(self):
        return self._support.items()

    def zero(self) -> RingElement:
        return MultiPoly.constant(0) if self.symbolic else Fraction(0)

    def one(self) -> RingElement:
        return MultiPoly.constant(1) if self.symbolic else Fraction(1)

    def zero_at(self, r: int) -> "WeightFunction":
        return weight_fn_zero_at(self, r)

    def truncate(self, n: int) -> "WeightFunction":
        return weight_fn_truncate(self, n)


def _like(f: WeightFunction, values: Mapping[int, RingElement]) -> WeightFunction:
    out = WeightFunction(values)
    if f.symbolic and not out.symbolic:
        # keep the coefficient domain even when the surviving values are constants
        out = WeightFunction({s: MultiPoly.coerce(v) for s, v in values.items()})
        out.symbolic = True
    return out


def weight_fn_zero_at(f: WeightFunction, r: int) -> WeightFunction:
    """Copy of f with ``f(r)`` set to zero."""
    return _like(f, {s: v for s, v in f.items() if s != r})


def weight_fn_truncate(f: WeightFunction, n: int) -> WeightFunction:
    """Copy of f with every part size above n removed."""
    return _like(f, {s: v for s, v in f.items() if s <= n})


# -- enumeration -------------------------------------------------------------


def enumerate_compositions(n: int, k: int, max_part: int) -> Iterator[Composition]:
    """Yield every k-tuple with entries in ``[0, max_part]`` summing to n.

    Tuples come out in lexicographic order. For ``k == 0`` the empty tuple is
    yielded iff ``n == 0``.
    """
    if n < 0 or k < 0:
        return
    prefix: List[int] = []

    def rec(remaining: int, slots: int) -> Iterator[Composition]:
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = max(0, remaining - (slots - 1) * max_part)
        hi = min(max_part, remaining)
        for part in range(lo, hi + 1):
            prefix.append(part)
            yield from rec(remaining - part, slots - 1)
            prefix.pop()

    yield from rec(n, k)


def weight_by_enumeration(f: WeightFunction, k: int, n: int) -> CompositionWeight:
    """Brute-force sum of ``f(p1)...f(pk)`` over all k-part compositions of n.

    Parts of weight zero contribute nothing, so the search only branches on
    part sizes in the support of f.
    """
    if k < 0 or n < 0:
        return f.zero()
    sizes = [(s, v) for s, v in f.items() if s <= n]
    if not sizes:
        return f.one() if k == 0 and n == 0 else f.zero()
    smallest = sizes[0][0]
    largest = sizes[-1][0]
    products: List[RingElement] = []

    def rec(remaining: int, slots: int, acc: RingElement) -> None:
        if slots == 0:
            if remaining == 0:
                products.append(acc)
            return
        if remaining < slots * smallest or remaining > slots * largest:
            return
        for s, v in sizes:
            if s > remaining:
                break
            rec(remaining - s, slots - 1, acc * v)

    rec(n, k, f.one())
    return ring_sum(products, f.zero())


def _part_count_vectors(sizes: List[int], k: int, n: int) -> Iterator[PartCountVector]:
    """All maps s -> l_s over ``sizes`` with sum l_s = k and sum s*l_s = n."""
    counts: Dict[int, int] = {}

    def rec(idx: int, parts_left: int, total_left: int) -> Iterator[PartCountVector]:
        if idx == len(sizes):
            if parts_left == 0 and total_left == 0:
                yield {s: c for s, c in counts.items() if c}
            return
        s = sizes[idx]
        top = parts_left if s == 0 else min(parts_left, total_left // s)
        for c in range(top, -1, -1):
            counts[s] = c
            yield from rec(idx + 1, parts_left - c, total_left - s * c)
        counts[s] = 0

    yield from rec(0, k, n)


def weight_by_partitions(f: WeightFunction, k: int, n: int) -> CompositionWeight:
    """Sum over part-count vectors of ``multinomial(k, l) * prod f(s)**l_s``."""
    if k < 0 or n < 0:
        return f.zero()
    sizes = [s for s in f.support if s <= n]
    terms = []
    for counts in _part_count_vectors(sizes, k, n):
        term = multinomial(k, counts.values()) * f.one()
        for s, c in counts.items():
            term = term * f(s) ** c
        terms.append(term)
    return ring_sum(terms, f.zero())


# -- convolution recurrences -------------------------------------------------


def _next_row(f: WeightFunction, prev: List[RingElement], zero: RingElement) -> List[RingElement]:
    n = len(prev) - 1
    row = []
    for m in range(n + 1):
        row.append(ring_sum((v * prev[m - s] for s, v in f.items() if s <= m), zero))
    return row


def convolution_table(f: WeightFunction, k: int, n: int) -> List[List[RingElement]]:
    """Full table ``T[j][m] = W_f(j, m)`` for ``0 <= j <= k``, ``0 <= m <= n``."""
    zero, one = f.zero(), f.one()
    row = [one] + [zero] * n
    table = [row]
    for _ in range(k):
        row = _next_row(f, row, zero)
        table.append(row)
    return table


def convolution_row(f: WeightFunction, k: int, n: int) -> List[RingElement]:
    """Row ``[W_f(k, m) for m in 0..n]``, keeping only two rows alive."""
    zero, one = f.zero(), f.one()
    row = [one] + [zero] * n
    for _ in range(k):
        row = _next_row(f, row, zero)
    return row


def weight_by_convolution(f: WeightFunction, k: int, n: int) -> CompositionWeight:
    if k < 0 or n < 0:
        return f.zero()
    return convolution_row(f, k, n)[n]


def weight_convolve_split(f: WeightFunction, k1: int, k2: int, n: int) -> CompositionWeight:
    """``sum_{x+y=n} W(k1, x) W(k2, y)``; equals ``W(k1 + k2, n)``."""
    if min(k1, k2, n) < 0:
        return f.zero()
    left = convolution_row(f, k1, n)
    right = convolution_row(f, k2, n)
    return ring_sum((left[x] * right[n - x] for x in range(n + 1)), f.zero())


def weight_by_weighted_conv(f: WeightFunction, k: int, n: int) -> CompositionWeight:
    """``k/n * sum_{s>=1} s f(s) W(k-1, n-s)``; requires ``k, n >= 1``."""
    if k < 1 or n < 1:
        raise PreconditionError(f"weighted convolution needs k >= 1 and n >= 1, got k={k}, n={n}")
    prev = convolution_row(f, k - 1, n)
    inner = ring_sum((s * v * prev[n - s] for s, v in f.items() if 1 <= s <= n), f.zero())
    return inner * Fraction(k, n)


def _invertible_constant(value: RingElement) -> Fraction | None:
    if isinstance(value, MultiPoly):
        if not value.is_constant():
            return None
        value = value.constant_value()
    return value if value else None


def weight_by_depril(f: WeightFunction, k: int, n: int) -> CompositionWeight:
    """Recurrence in n at fixed k, seeded with ``W(k, k) = f(1)**k``.

    ``W(k, m) = 1/(f(1)(m-k)) sum_{s>=1} (k+1 - (m+1)/(s+1)) (s+1) f(s+1) W(k, m-s)``

    Requires ``f(0) == 0`` and ``f(1)`` a nonzero rational constant.
    """
    if 0 in f:
        raise PreconditionError("De Pril recurrence requires f(0) = 0")
    f1 = _invertible_constant(f(1))
    if f1 is None:
        raise PreconditionError(f"De Pril recurrence requires an invertible rational f(1), got {f(1)}")
    if k < 0 or n < k:
        return f.zero()
    memo = {k: f(1) ** k}
    for m in range(k + 1, n + 1):
        terms = []
        for s in range(1, min(m - k, f.max_part - 1) + 1):
            w = f(s + 1)
            if not w:
                continue
            factor = (k + 1 - Fraction(m + 1, s + 1)) * (s + 1)
            terms.append(factor * w * memo[m - s])
        memo[m] = ring_sum(terms, f.zero()) / (f1 * (m - k))
    return memo[n]


def weight_by_part_removal(f: WeightFunction, r: int, k: int, n: int) -> CompositionWeight:
    """``sum_i f(r)**i C(k, i) W_g(k-i, n-r*i)`` where g is f with ``g(r) = 0``."""
    if r < 0:
        raise PreconditionError(f"part size must be nonnegative, got {r}")
    if k < 0 or n < 0:
        return f.zero()
    g = weight_fn_zero_at(f, r)
    fr = f(r)
    top = k if r == 0 else min(k, n // r)
    table = convolution_table(g, k, n)
    terms = []
    for i in range(top + 1):
        rest = table[k - i][n - r * i]
        if rest:
            terms.append(binomial(k, i) * fr ** i * rest)
    return ring_sum(terms, f.zero())
