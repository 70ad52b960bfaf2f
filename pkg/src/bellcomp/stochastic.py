"""Exact distributions of sums of i.i.d. nonnegative integer random variables.

A positive rational weight function f normalizes to a pmf ``g = f / F`` with
``F = sum_s f(s)``, and ``W_f(k, n) = F**k * P_g[X_1 + ... + X_k = n]``.
The k-fold convolution here is computed on its own, without the composition
recurrences, so the two sides check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping

from .compositions import (
    PreconditionError,
    WeightFunction,
    weight_by_convolution,
)
from .ring import MultiPoly, Scalar


class Pmf:
    """Probability mass function on the nonnegative integers with exact masses."""

    __slots__ = ("_mass",)

    def __init__(self, mass: Mapping[int, Scalar]):
        clean: Dict[int, Fraction] = {}
        for s, p in mass.items():
            s = int(s)
            p = Fraction(p)
            if s < 0:
                raise ValueError(f"outcome must be nonnegative, got {s}")
            if p < 0:
                raise ValueError(f"negative mass {p} at {s}")
            if p:
                clean[s] = p
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"masses sum to {total}, not 1")
        self._mass = dict(sorted(clean.items()))

    @classmethod
    def point(cls, s: int) -> "Pmf":
        return cls({s: 1})

    def __call__(self, s: int) -> Fraction:
        return self._mass.get(s, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return self._mass == other._mass

    def __repr__(self) -> str:
        return f"Pmf({self._mass})"

    @property
    def mass(self) -> Dict[int, Fraction]:
        return dict(self._mass)

    def items(self):
        return self._mass.items()

    @property
    def support(self):
        return list(self._mass)

    def total(self) -> Fraction:
        return sum(self._mass.values(), Fraction(0))


@dataclass(frozen=True)
class NormalizedWeight:
    pmf: Pmf
    total: Fraction


def _rational_values(f: WeightFunction) -> Dict[int, Fraction]:
    out = {}
    for s, v in f.items():
        if isinstance(v, MultiPoly):
            if not v.is_constant():
                raise PreconditionError(f"symbolic weight f({s}) = {v} has no probability")
            v = v.constant_value()
        out[s] = v
    return out


def normalize(f: WeightFunction) -> NormalizedWeight:
    """Split f into a pmf and its normalization constant.

    All values must be positive rationals and the support nonempty.
    """
    values = _rational_values(f)
    if not values:
        raise PreconditionError("cannot normalize an empty weight function")
    bad = {s: v for s, v in values.items() if v <= 0}
    if bad:
        raise PreconditionError(f"weights must be positive, got {bad}")
    total = sum(values.values(), Fraction(0))
    return NormalizedWeight(Pmf({s: v / total for s, v in values.items()}), total)


def convolve(a: Pmf, b: Pmf) -> Pmf:
    out: Dict[int, Fraction] = {}
    for x, p in a.items():
        for y, q in b.items():
            out[x + y] = out.get(x + y, 0) + p * q
    return Pmf(out)


def sum_pmf(g: Pmf, k: int) -> Pmf:
    """Distribution of ``X_1 + ... + X_k`` for i.i.d. ``X_i ~ g``."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    result = Pmf.point(0)
    for _ in range(k):
        result = convolve(result, g)
    return result


def weight_from_pmf(g: Pmf, total: Scalar, k: int, n: int, exponent: str = "k") -> Fraction:
    """Recover ``W_f(k, n)`` as ``total**k * P[sum of k draws = n]``.

    ``exponent="n"`` scales by ``total**n`` instead; this variant does not
    reproduce W in general and exists so the two can be compared.
    """
    if exponent not in ("k", "n"):
        raise ValueError(f"exponent must be 'k' or 'n', got {exponent!r}")
    power = k if exponent == "k" else n
    return Fraction(total) ** power * sum_pmf(g, k)(n)


def pmf_of_weighted_sum(f: WeightFunction, k: int, n: int) -> Fraction:
    """``P[X_1 + ... + X_k = n]`` when f itself is the common pmf.

    Computed by the composition recurrence and checked against direct
    convolution of the pmf.
    """
    values = _rational_values(f)
    total = sum(values.values(), Fraction(0))
    if total != 1:
        raise PreconditionError(f"weights sum to {total}, not 1")
    w = Fraction(weight_by_convolution(f, k, n))
    expected = sum_pmf(Pmf(values), k)(n)
    if w != expected:
        raise AssertionError(f"composition weight {w} disagrees with convolution {expected}")
    return w
