import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from bellcomp.ring import (
    DivisibilityError,
    MultiPoly,
    binomial,
    format_rational,
    make_monomial,
    multinomial,
    poly_extract_factor,
    poly_scale_div,
    ring_sum,
)

from conftest import nonzero_rationals, polys, ring_elements

x1, x2, x3 = (MultiPoly.var(i) for i in (1, 2, 3))


@pytest.mark.parametrize("n, k, expected", [(4, 2, 6), (5, 0, 1), (3, 5, 0), (3, -1, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected
    assert isinstance(binomial(n, k), Fraction)


def test_multinomial_examples():
    assert multinomial(3, [1, 0, 2]) == math.factorial(3) // (math.factorial(1) * math.factorial(0) * math.factorial(2))
    assert multinomial(3, [1, 0, 2]) == 3
    assert multinomial(7, [7]) == 1
    assert multinomial(2, [1, 1]) == 2
    assert multinomial(0, []) == 1


def test_multinomial_rejects_bad_sum():
    with pytest.raises(ValueError):
        multinomial(3, [1, 1])


def test_scale_div_examples():
    assert poly_scale_div(6 * x1 * x2, 2) == 3 * x1 * x2
    assert poly_scale_div(MultiPoly(), 5) == MultiPoly()
    p = 3 * x2**2 + 4 * x1 * x3
    assert poly_scale_div(p, 1) == p
    with pytest.raises(ZeroDivisionError):
        poly_scale_div(p, 0)


def test_extract_factor_examples():
    p = 6 * x1 * x2**2 + 8 * x1**2 * x3
    q = poly_extract_factor(p, 1)
    assert q == 6 * x2**2 + 8 * x1 * x3
    assert q * x1 == p
    assert poly_extract_factor(x1, 1) == 1
    with pytest.raises(DivisibilityError):
        poly_extract_factor(x2, 1)
    with pytest.raises(DivisibilityError):
        poly_extract_factor(x1 + 1, 1)


def test_index_zero_is_invalid():
    with pytest.raises(ValueError):
        MultiPoly.var(0)


def test_zero_has_unique_form():
    assert MultiPoly({(): 0}).terms == {}
    assert (x1 - x1).terms == {}
    assert Fraction(0, 7) == Fraction(0, 1)
    assert MultiPoly() == 0 and MultiPoly.constant(3) == Fraction(3)


def test_render_graded_lex():
    assert str(3 * x2**2 + 4 * x1 * x3) == "3*x2^2 + 4*x1*x3"
    assert str(x1**3 + Fraction(1, 2) + x2) == "1/2 + x2 + x1^3"
    assert str(MultiPoly()) == "0"


def test_json_schema_and_round_trip():
    p = Fraction(1, 4) * x2**2 + Fraction(1, 3) * x1 * x3
    data = p.to_json()
    assert data == [
        {"coeff": "1/4", "monomial": {"2": 2}},
        {"coeff": "1/3", "monomial": {"1": 1, "3": 1}},
    ]
    assert MultiPoly.from_json(json.loads(json.dumps(data))) == p
    assert format_rational(Fraction(6, 3)) == "2"


def test_evaluate_requires_every_indeterminate():
    p = 3 * x1 * x2
    assert p.evaluate({1: 1, 2: 1}) == 3
    with pytest.raises(KeyError):
        p.evaluate({1: 1})


def test_ring_sum_matches_repeated_addition():
    items = [x1, 2 * x2, -x1, Fraction(3)]
    assert ring_sum(items, MultiPoly()) == 2 * x2 + 3
    assert ring_sum([Fraction(1, 2), Fraction(1, 3)], Fraction(0)) == Fraction(5, 6)


def test_monomial_degrees():
    m = make_monomial({1: 1, 3: 2, 2: 0})
    assert m == ((1, 1), (3, 2))


@settings(max_examples=1000, deadline=None)
@given(ring_elements, ring_elements, ring_elements)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a + (-a) == 0


@settings(max_examples=300, deadline=None)
@given(polys, nonzero_rationals)
def test_scale_div_inverts_scaling(p, c):
    assert poly_scale_div(p, c) * c == p


@settings(max_examples=300, deadline=None)
@given(polys)
def test_extract_factor_inverts_multiplication(p):
    assert poly_extract_factor(p * MultiPoly.var(2), 2) == p


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_coefficients_stay_canonical(p, q):
    for v in (p * q - p).terms.values():
        assert math.gcd(v.numerator, v.denominator) == 1
        assert v.denominator >= 1 and v != 0
