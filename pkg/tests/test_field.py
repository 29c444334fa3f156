from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ratmoduli.errors import DivisionByZero, FieldMismatch, ParseError
from ratmoduli.field import (QQ, FieldElement, Field, common_field, element_nth_roots,
                             format_element, parse_element, quadratic_field,
                             rational_nth_root, rational_square_root)

from .conftest import nonzero_rationals, quad_fields, rationals


def as_matrix(x: FieldElement):
    """Multiplication-by-x on the basis (1, sqrt D)."""
    D = x.field.D or 0
    return ((x.a, D * x.b), (x.b, x.a))


def matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


elements = st.builds(lambda F, a, b: F(a, b), quad_fields, rationals, rationals)


@given(quad_fields, rationals, rationals, rationals, rationals)
def test_multiplication_matches_matrix_oracle(F, a, b, c, d):
    x, y = F(a, b), F(c, d)
    assert as_matrix(x * y) == matmul(as_matrix(x), as_matrix(y))


@given(quad_fields, rationals, rationals, rationals, rationals)
def test_field_axioms(F, a, b, c, d):
    x, y = F(a, b), F(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(elements, elements)
def test_norm_is_multiplicative(x, y):
    y = y.lift(x.field) if y.field is QQ else y
    if y.field is x.field:
        assert (x * y).norm() == x.norm() * y.norm()


@given(elements)
def test_conjugate_and_norm(x):
    assert x * x.conjugate() == x.norm()


@given(elements, st.integers(-4, 4))
def test_integer_powers(x, n):
    if not x and n < 0:
        return
    expected = x.field(1)
    base = x if n >= 0 else x.inverse()
    for _ in range(abs(n)):
        expected = expected * base
    assert x ** n == expected


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QQ(0).inverse()
    with pytest.raises(ZeroDivisionError):
        quadratic_field(2)(1, 1) / 0


def test_field_descriptors():
    assert quadratic_field(-1) is quadratic_field(-1)
    assert QQ.to_json() == {"kind": "Rationals"}
    assert quadratic_field(-3).to_json() == {"kind": "QuadExt", "D": -3}
    assert Field.from_json({"kind": "QuadExt", "D": 5}) is quadratic_field(5)
    for bad in (0, 1, 4, 12, -8):
        with pytest.raises(ValueError):
            quadratic_field(bad)
    with pytest.raises(ParseError):
        Field.from_json({"kind": "Reals"})


def test_promotion_and_mismatch():
    K = quadratic_field(2)
    assert (QQ(3) + K(0, 1)).field is K
    assert common_field(QQ, K, QQ) is K
    with pytest.raises(FieldMismatch):
        K(0, 1) + quadratic_field(3)(0, 1)
    with pytest.raises(FieldMismatch):
        FieldElement(1, 1, QQ)


def test_spec_examples():
    K = quadratic_field(-3)
    assert K(1, 1) * K(1, -1) == 4
    assert QQ(Fraction(1, 2)) + Fraction(1, 3) == Fraction(5, 6)


@pytest.mark.parametrize("text,D,expected", [
    ("3/4", None, (Fraction(3, 4), 0)),
    ("-7", None, (-7, 0)),
    ("1/2+3/5*sqrt(2)", 2, (Fraction(1, 2), Fraction(3, 5))),
    ("sqrt(-3)", -3, (0, 1)),
    ("-sqrt(-3)", -3, (0, -1)),
    ("2*sqrt(5)", 5, (0, 2)),
    ("864i", -1, (0, 864)),
    ("-72+72i", -1, (-72, 72)),
    ("3-3i", -1, (3, -3)),
    ("i", -1, (0, 1)),
])
def test_parse(text, D, expected):
    F = QQ if D is None else quadratic_field(D)
    x = parse_element(text, F)
    assert (x.a, x.b) == tuple(Fraction(v) for v in expected)


@pytest.mark.parametrize("text", ["abc", "1/0", "", "2/00", "1+", "sqrt(2)*3"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_element(text, quadratic_field(2))


@pytest.mark.parametrize("text,F", [("sqrt(2)", QQ), ("1+sqrt(3)", quadratic_field(2))])
def test_parse_rejects_other_fields(text, F):
    with pytest.raises(FieldMismatch):
        parse_element(text, F)


@given(elements)
def test_format_parse_round_trip(x):
    assert parse_element(format_element(x), x.field) == x


@given(rationals)
def test_rational_square_root(q):
    r = rational_square_root(q * q)
    assert r is not None and r * r == q * q
    assert rational_square_root(Fraction(2) * q * q if q else Fraction(2)) is None


@given(nonzero_rationals, st.integers(1, 7))
def test_rational_nth_root_of_power(q, n):
    r = rational_nth_root(q ** n, n)
    assert r is not None and r ** n == q ** n


def test_rational_nth_root_absent():
    assert rational_nth_root(Fraction(2), 3) is None
    assert rational_nth_root(Fraction(-4), 2) is None
    assert rational_nth_root(Fraction(-8, 27), 3) == Fraction(-2, 3)


@given(elements.filter(bool), st.integers(1, 4))
def test_element_roots_recover_powers(y, n):
    roots = element_nth_roots(y ** n, n)
    assert all(r ** n == y ** n for r in roots)
    if y.is_rational() or n == 2:
        assert y in roots


def test_roots_of_pure_sqrt_multiples():
    K = quadratic_field(-1)
    assert K(0, 1) in element_nth_roots(K(-1), 2)
    assert set(element_nth_roots(K(0, 2), 2)) == {K(1, 1), K(-1, -1)}
