from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybhomology import LaurentPoly, laurent_divmod, parse_expression

small = st.integers(-4, 4)


@st.composite
def laurent(draw, max_span=4):
    low = draw(st.integers(-3, 3))
    span = draw(st.integers(0, max_span))
    coeffs = draw(st.lists(small, min_size=span + 1, max_size=span + 1))
    return LaurentPoly({low + k: c for k, c in enumerate(coeffs)})


nonzero = laurent().filter(bool)
y = LaurentPoly.gen()


def test_normalization_strips_zeros():
    p = LaurentPoly({-2: 0, 0: 3, 1: 0, 4: 0})
    assert p.low == 0 and p.coeffs == (Fraction(3),)
    assert LaurentPoly({5: 0}).is_zero()
    assert LaurentPoly() == 0


def test_units_are_monomials():
    assert (3 * y**-2).is_unit()
    assert not (1 + y).is_unit()
    assert not LaurentPoly().is_unit()
    u = Fraction(-2, 3) * y**5
    assert u * u.unit_inverse() == 1


def test_span_and_str():
    p = y**-1 - 2 + Fraction(1, 2) * y**2
    assert p.span() == 3
    assert str(p) == "1/2*y^2 - 2 + y^-1"
    assert parse_expression(str(p)) == p


@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(laurent(), nonzero)
def test_division_with_remainder(a, b):
    q, r = laurent_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.span() < b.span()


@given(nonzero, st.integers(-5, 5), st.fractions(min_value=-5, max_value=5).filter(bool))
def test_canonical_associate_unit_invariant(a, k, c):
    u = LaurentPoly({k: c})
    assert (u * a).canonical_associate() == a.canonical_associate()
    assoc, unit = a.canonical()
    assert assoc == unit * a
    assert assoc.low == 0 and assoc.coeffs[-1] == 1


@given(laurent(), laurent())
def test_evaluation_is_a_homomorphism(a, b):
    for v in (Fraction(2), Fraction(-1, 3)):
        assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)
        assert (a + b).evaluate(v) == a.evaluate(v) + b.evaluate(v)


def test_exact_division_and_errors():
    assert (y**4 - 1) / (y**2 - 1) == y**2 + 1
    with pytest.raises(ArithmeticError):
        (y**4 - 1) / (y**3 - 1)
    with pytest.raises(ZeroDivisionError):
        laurent_divmod(y, LaurentPoly())


def test_power_with_negative_exponent_needs_unit():
    assert (2 * y) ** -2 == Fraction(1, 4) * y**-2
    with pytest.raises(ArithmeticError):
        (1 + y) ** -1


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1-y^2", 1 - y**2),
        ("y^-1 + 3/2", y**-1 + Fraction(3, 2)),
        ("(1+y)^2", 1 + 2 * y + y**2),
        ("-y^(2)", -(y**2)),
        ("2*y*y", 2 * y**2),
    ],
)
def test_parse_expression(text, expected):
    assert parse_expression(text) == expected


@pytest.mark.parametrize("bad", ["", "1+", "y^x", "z+1", "1/(1+y)", "2 3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_expression(bad)
