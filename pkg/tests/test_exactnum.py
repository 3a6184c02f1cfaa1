from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopforders.exactnum import (
    Cyc,
    FieldMismatch,
    cyclotomic_poly,
    embed,
    euler_phi,
    field_create,
    format_coeff,
    is_algebraic_integer,
    parse_coeff,
    restrict,
    root_of_unity,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 21]


def test_small_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_poly_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(n)) == [int(c) for c in expected]
    assert field_create(n).degree == euler_phi(n) == sympy.totient(n)


def test_field_create_is_cached():
    assert field_create(12) is field_create(12)
    with pytest.raises(ValueError):
        field_create(0)


def test_basic_arithmetic():
    K4 = field_create(4)
    i = K4.zeta()
    assert i * i == K4(-1)
    K = field_create(7)
    assert K(Fraction(1, 2)) + K(Fraction(1, 3)) == K(Fraction(5, 6))
    K3 = field_create(3)
    z = K3.zeta()
    assert (K3.one + z).inverse() == -z


def test_division_by_zero():
    K = field_create(5)
    with pytest.raises(ZeroDivisionError):
        K.zero.inverse()


def test_roots_of_unity_in_q12():
    K = field_create(12)
    assert root_of_unity(K, 2) == K(-1)
    w = root_of_unity(K, 3)
    assert w == K.zeta(4)
    assert w * w + w + K.one == K.zero
    with pytest.raises(ValueError):
        root_of_unity(K, 5)


def test_algebraic_integers():
    K = field_create(3)
    z = K.zeta()
    assert is_algebraic_integer(z)
    assert not is_algebraic_integer(K(Fraction(1, 2)))
    assert is_algebraic_integer(K.one + z)
    assert not is_algebraic_integer((K.one + z) / 3)


def test_embed_and_restrict():
    K2, K3, K6, K12 = (field_create(n) for n in (2, 3, 6, 12))
    assert embed(K2(-1), K12) == K12(-1)
    z = embed(K3.zeta(), K12)
    assert z ** 3 == K12.one and z != K12.one
    assert z == K12.zeta(4)
    assert restrict(z, K3) == K3.zeta()
    with pytest.raises(ValueError):
        embed(field_create(4).zeta(), K6)
    with pytest.raises(ValueError):
        restrict(K12.zeta(), K3)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field_create(3).one + field_create(5).one


def test_coefficient_strings_round_trip():
    K = field_create(5)
    x = K.element([Fraction(1, 3), -2, 0, Fraction(7, 4)])
    assert parse_coeff(K, x.to_json()) == x
    assert format_coeff(Fraction(-3, 4)) == "-3/4"
    with pytest.raises(ValueError):
        parse_coeff(K, ["1/1"])


def test_sympy_oracle_for_products():
    # compare a product against sympy's polynomial remainder modulo Phi_n
    n = 9
    K = field_create(n)
    x = sympy.Symbol("x")
    a = [Fraction(1, 2), 3, 0, -1, 0, 2]
    b = [2, 0, Fraction(-5, 3), 1, 1, 0]
    pa = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(map(Fraction, a)))
    pb = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(map(Fraction, b)))
    rem = sympy.Poly(sympy.rem(sympy.expand(pa * pb), sympy.cyclotomic_poly(n, x), x), x)
    coeffs = rem.all_coeffs()[::-1]
    coeffs += [0] * (K.degree - len(coeffs))
    assert (K.element(a) * K.element(b)).coords == tuple(Fraction(int(c.p), int(c.q)) for c in map(sympy.Rational, coeffs))


# -- properties -----------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_elements(draw, n=None, count=1):
    n = n if n is not None else draw(st.sampled_from(CONDUCTORS))
    K = field_create(n)
    out = [K.element(draw(st.lists(rationals, min_size=K.degree, max_size=K.degree))) for _ in range(count)]
    return out


@settings(max_examples=60, deadline=None)
@given(field_elements(count=3))
def test_field_axioms(xs):
    a, b, c = xs
    K = a.field
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + K.zero == a and a * K.one == a
    assert a - a == K.zero
    if a:
        assert a * a.inverse() == K.one
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.integers(-50, 50), st.integers(-50, 50))
def test_zeta_powers(n, j, k):
    K = field_create(n)
    assert K.zeta(j) * K.zeta(k) == K.zeta(j + k)
    assert K.zeta(n) == K.one


@settings(max_examples=40, deadline=None)
@given(field_elements(n=6, count=2))
def test_embedding_is_a_ring_map(xs):
    a, b = xs
    T = field_create(12)
    assert embed(a * b, T) == embed(a, T) * embed(b, T)
    assert embed(a + b, T) == embed(a, T) + embed(b, T)
    assert restrict(embed(a, T), a.field) == a


@settings(max_examples=40, deadline=None)
@given(field_elements(count=1))
def test_canonical_form_and_hash(xs):
    (a,) = xs
    again = Cyc(a.field, list(a.coords) + [0] * 3)
    assert again == a and hash(again) == hash(a)
    assert a.den >= 1
