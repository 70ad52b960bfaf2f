"""Exact scalar and sparse polynomial arithmetic.

Scalars are :class:`fractions.Fraction` values (always in lowest terms, zero
is ``0/1``).  Polynomials are :class:`MultiPoly` values in the indeterminates
``x1, x2, ...`` with rational coefficients.  Both support ``+``, ``-``, ``*``
and exact division by a nonzero rational, and they interoperate, so the
composition and Bell code is written once for either coefficient domain.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

BigRational = Fraction

# A monomial is a tuple of (index, exponent) pairs, sorted by index, with
# index >= 1 and exponent >= 1.  The empty tuple is the constant monomial.
Monomial = Tuple[Tuple[int, int], ...]

Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


class DivisibilityError(ArithmeticError):
    """Raised when a polynomial is not divisible by the requested factor."""


def binomial(n: int, k: int) -> Fraction:
    """Return C(n, k) as an exact rational; zero outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def multinomial(k: int, parts: Iterable[int]) -> Fraction:
    """Return ``k! / (l_0! l_1! ...)`` for block sizes ``parts`` summing to k."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative block size in {parts}")
    if sum(parts) != k:
        raise ValueError(f"parts {parts} do not sum to {k}")
    result = math.factorial(k)
    for p in parts:
        result //= math.factorial(p)
    return Fraction(result)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal into a Fraction."""
    return Fraction(text.strip())


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- monomials ---------------------------------------------------------------


def make_monomial(exponents: Mapping[int, int]) -> Monomial:
    """Canonical monomial from an index -> exponent map (zero exponents dropped)."""
    items = []
    for i, e in exponents.items():
        i, e = int(i), int(e)
        if i < 1:
            raise ValueError(f"indeterminate index must be >= 1, got {i}")
        if e < 0:
            raise ValueError(f"negative exponent {e} for x{i}")
        if e:
            items.append((i, e))
    items.sort()
    return tuple(items)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for i, e in b:
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))


def total_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def weighted_degree(m: Monomial) -> int:
    return sum(i * e for i, e in m)


def _exponent_vector(m: Monomial, width: int) -> Tuple[int, ...]:
    vec = [0] * width
    for i, e in m:
        vec[i - 1] = e
    return tuple(vec)


def _format_monomial(m: Monomial) -> str:
    return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in m)


# -- polynomials -------------------------------------------------------------


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Instances are immutable. The term map never holds a zero coefficient,
    so two polynomials are equal exactly when their term maps are equal.
    Integers and Fractions compare equal to the matching constant polynomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> "MultiPoly":
        # trusted constructor: terms already canonical and owned
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        return cls._wrap({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def var(cls, i: int, coeff: Scalar = 1) -> "MultiPoly":
        """The polynomial ``coeff * x_i``."""
        return cls({make_monomial({i: 1}): coeff})

    @classmethod
    def term(cls, coeff: Scalar, exponents: Mapping[int, int]) -> "MultiPoly":
        return cls({make_monomial(exponents): coeff})

    @classmethod
    def coerce(cls, value: "Scalar | MultiPoly") -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a ring element")

    # -- inspection --

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if it has indeterminates."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def coefficient(self, exponents: Mapping[int, int]) -> Fraction:
        return self._terms.get(make_monomial(exponents), Fraction(0))

    def indeterminates(self) -> set:
        return {i for m in self._terms for i, _ in m}

    def sorted_terms(self):
        """Terms in graded-lex order: total degree, then exponent vector, ascending."""
        width = max(self.indeterminates(), default=0)
        return sorted(
            self._terms.items(),
            key=lambda t: (total_degree(t[0]), _exponent_vector(t[0], width)),
        )

    # -- arithmetic --

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            other = MultiPoly.constant(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return MultiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "MultiPoly":
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._wrap({})
            return MultiPoly._wrap({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = MultiPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            if not c.is_constant():
                return NotImplemented
            c = c.constant_value()
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return poly_scale_div(self, Fraction(c))

    # -- comparison --

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and rendering --

    def evaluate(self, assignment: Mapping[int, Scalar]) -> Fraction:
        """Substitute ``x_i -> assignment[i]`` for every occurring indeterminate."""
        missing = sorted(self.indeterminates() - set(assignment))
        if missing:
            raise KeyError(f"no value assigned to {', '.join(f'x{i}' for i in missing)}")
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for i, e in m:
                v *= Fraction(assignment[i]) ** e
            total += v
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(_format_monomial(m))
            else:
                parts.append(f"{format_rational(c)}*{_format_monomial(m)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def to_json(self) -> list:
        return [
            {"coeff": format_rational(c), "monomial": {str(i): e for i, e in m}}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "MultiPoly":
        out: Dict[Monomial, Fraction] = {}
        for term in data:
            m = make_monomial({int(i): e for i, e in term["monomial"].items()})
            out[m] = out.get(m, 0) + parse_rational(term["coeff"])
        return cls(out)


RingElement = Union[Fraction, MultiPoly]


def poly_scale_div(p: MultiPoly, c: Scalar) -> MultiPoly:
    """Divide every coefficient of ``p`` by the nonzero rational ``c``."""
    c = Fraction(c)
    if not c:
        raise ZeroDivisionError("polynomial division by zero")
    return MultiPoly._wrap({m: v / c for m, v in p._terms.items()})


def poly_extract_factor(p: MultiPoly, i: int) -> MultiPoly:
    """Return q with ``p == x_i * q``.

    Raises DivisibilityError if some term of ``p`` lacks ``x_i``.
    """
    if i < 1:
        raise ValueError(f"indeterminate index must be >= 1, got {i}")
    out: Dict[Monomial, Fraction] = {}
    for m, c in p._terms.items():
        exps = dict(m)
        if exps.get(i, 0) < 1:
            raise DivisibilityError(f"term {c}*{_format_monomial(m) or '1'} is not divisible by x{i}")
        exps[i] -= 1
        out[make_monomial(exps)] = c
    return MultiPoly._wrap(out)


# -- generic ring helpers ----------------------------------------------------


def is_zero(value: RingElement) -> bool:
    return not value


def ring_sum(values: Iterable[RingElement], zero: RingElement) -> RingElement:
    """Sum of ``values`` starting from ``zero``.

    Polynomial summands are accumulated into one mutable term map, which keeps
    long sums linear in the number of terms.
    """
    if not isinstance(zero, MultiPoly):
        total = zero
        for v in values:
            total = total + v
        return total
    acc: Dict[Monomial, Fraction] = dict(zero._terms)
    for v in values:
        items = v._terms.items() if isinstance(v, MultiPoly) else ((ONE_MONOMIAL, Fraction(v)),)
        for m, c in items:
            acc[m] = acc.get(m, 0) + c
    return MultiPoly._wrap({m: c for m, c in acc.items() if c})


def to_rational(value: RingElement) -> Fraction:
    """Collapse a constant ring element to a Fraction."""
    if isinstance(value, MultiPoly):
        return value.constant_value()
    return Fraction(value)


def render(value: RingElement) -> str:
    if isinstance(value, MultiPoly):
        return str(value)
    return format_rational(value)


def to_json_value(value: RingElement):
    if isinstance(value, MultiPoly):
        return value.to_json()
    return format_rational(value)
