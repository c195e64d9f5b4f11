from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seifert.algebra import (LaurentPolynomial, MINUS_INFINITY, ONE, RationalFunction, T,
                             chi, decompose_chi, format_laurent, laurent_gcd, parse_rational,
                             substitute)
from seifert.algebra import _pdivmod, _pgcd
from seifert.errors import InvalidInput

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def laurents(draw, max_terms=4):
    low = draw(st.integers(-3, 3))
    coeffs = draw(st.lists(rationals, max_size=max_terms))
    return LaurentPolynomial(coeffs, low)


@st.composite
def coprime_denominators(draw):
    """Polynomials of positive degree, nonzero at t = 0 and t = 1."""
    c0 = draw(st.sampled_from([-3, -2, -1, 1, 2, 3]))
    middle = draw(st.lists(st.integers(-4, 4), max_size=2))
    lead = draw(st.sampled_from([-2, -1, 1, 2, 3]))
    coeffs = [c0] + middle + [lead]
    if sum(coeffs) == 0:
        coeffs[0] += 1 if c0 != -1 else 2
    return LaurentPolynomial(coeffs)


@st.composite
def proper_fractions(draw):
    den = draw(coprime_denominators())
    num = LaurentPolynomial(draw(st.lists(rationals, max_size=int(den.degree))))
    return RationalFunction(num, den)


# ---- Laurent polynomials ---------------------------------------------------

def test_zero_degree_is_minus_infinity():
    assert LaurentPolynomial().degree == MINUS_INFINITY
    assert LaurentPolynomial([0, 0]).degree == MINUS_INFINITY


def test_construction_trims_and_normalizes():
    p = LaurentPolynomial([0, 0, 3, 0], -2)
    assert p.low == 0 and p.coeffs == (3,)
    assert p == 3


def test_format():
    assert format_laurent(-2 * T ** 2 + 5 * T - 2) == "-2t^2 + 5t - 2"
    assert format_laurent(LaurentPolynomial()) == "0"


@given(laurents(), laurents(), laurents())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(laurents(), laurents())
def test_exact_division_roundtrip(a, b):
    if b:
        assert (a * b).exact_div(b) == a


@given(laurents())
def test_unit_normal_idempotent(a):
    u = a.unit_normal()
    assert u.unit_normal() == u
    if a:
        assert u.low == 0 and u.leading_coefficient > 0
        assert u == a or u == -a.shift(-a.low) or u == a.shift(-a.low)


@given(laurents())
def test_json_roundtrip(a):
    assert LaurentPolynomial.from_json(a.to_json()) == a


def test_json_format():
    p = LaurentPolynomial.from_terms({-1: Fraction(1, 2), 2: -3})
    assert p.to_json() == {"-1": "1/2", "2": "-3"}


def test_gcd_examples():
    assert laurent_gcd(T - 1, LaurentPolynomial()) == T - 1
    assert laurent_gcd((2 * T - 1) * (2 - T), 2 * T - 1) == 2 * T - 1
    assert laurent_gcd(T ** 2, T ** 5) == ONE
    assert laurent_gcd(LaurentPolynomial(), LaurentPolynomial()) == 0


@settings(max_examples=60)
@given(laurents(), laurents(), laurents())
def test_gcd_divides_and_is_maximal(a, b, c):
    g = laurent_gcd(a * c, b * c)
    if a * c or b * c:
        assert g.divides(a * c) and g.divides(b * c)
        if c:
            assert c.divides(g)



def _euclid_gcd(a, b):
    """Textbook Euclid over Q (reference for the integer remainder sequence)."""
    a, b = list(a), list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return [Fraction(x) / a[-1] for x in a] if a else []


@settings(max_examples=100)
@given(laurents(6), laurents(6), laurents(3))
def test_pgcd_matches_euclid(a, b, c):
    x, y = list((a * c).coeffs), list((b * c).coeffs)
    assert _pgcd(x, y) == _euclid_gcd(x, y)

def test_substitute_examples():
    assert substitute(-2 * T ** 2 + 5 * T - 2, 1) == 1
    assert substitute(T ** -1, 2) == Fraction(1, 2)
    assert substitute(T - 2, -1) == -3
    with pytest.raises(InvalidInput):
        substitute(T ** -1, 0)
    assert substitute(T + 1, 0) == 1


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("4") == 4
    for bad in ["1.5", "x", "1/0", 1.5, True]:
        with pytest.raises(InvalidInput):
            parse_rational(bad)


# ---- rational functions and chi ----------------------------------------------

def test_rational_function_zero_denominator():
    with pytest.raises(InvalidInput):
        RationalFunction(ONE, LaurentPolynomial())


def test_decompose_examples():
    d = decompose_chi(3 * T ** 2 - T ** -1)
    assert d.lambda_part == 3 * T ** 2 - T ** -1 and d.proper_part == 0

    d = decompose_chi(RationalFunction(ONE, T * (T + 2)))
    assert d.lambda_part == Fraction(1, 2) * T ** -1
    assert d.proper_part == RationalFunction(LaurentPolynomial.constant(Fraction(-1, 2)), T + 2)

    d = decompose_chi(RationalFunction(ONE, (1 - T) * (T + 2)))
    assert d.lambda_part == RationalFunction(LaurentPolynomial.constant(Fraction(1, 3)), 1 - T)
    assert d.proper_part == RationalFunction(LaurentPolynomial.constant(Fraction(1, 3)), T + 2)


def test_chi_examples():
    assert chi(3 * T ** 4 - T ** -2 + 7) == 0
    assert chi(RationalFunction(T - 1, T + 2)) == Fraction(1, 3)
    assert chi(RationalFunction(ONE, T + 2)) == Fraction(-1, 9)


@st.composite
def mixed_functions(draw):
    """Random element of Lambda plus a random proper fraction."""
    poly = draw(laurents())
    a = draw(st.integers(0, 2))
    lam = RationalFunction(poly, (1 - T) ** a) if a else RationalFunction(poly)
    return lam + draw(proper_fractions())


@settings(max_examples=80)
@given(mixed_functions())
def test_decompose_recombines(f):
    d = decompose_chi(f)
    assert d.lambda_part + d.proper_part == f
    e = d.proper_part
    if e:
        assert e.den(0) != 0 and e.den(1) != 0
        assert e.num.degree < e.den.degree and e.num.low >= 0


@settings(max_examples=60)
@given(mixed_functions(), mixed_functions(), rationals, rationals)
def test_chi_linear(f, g, a, b):
    assert chi(f * a + g * b) == a * chi(f) + b * chi(g)


@settings(max_examples=200)
@given(proper_fractions())
def test_chi_of_shifted_proper_fraction(e):
    # chi((t - 1) E) = E(1) for E proper with denominator prime to t and 1 - t
    assert chi(e * (T - 1)) == e(1)


@settings(max_examples=60)
@given(proper_fractions())
def test_chi_is_derivative_at_one(e):
    assert chi(e) == e.derivative()(1)


@settings(max_examples=60)
@given(mixed_functions())
def test_reduced_differs_by_laurent(f):
    r = f.reduced()
    assert (f - r).is_laurent()
    assert r.num.degree < r.den.degree or not r
