from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from ratmoduli.errors import IndexTooLarge, OrderMismatch, UnknownVariablePair
from ratmoduli.field import QQ, quadratic_field
from ratmoduli.poly import (X0, X1, BinaryForm, MultiPoly, gen_transvect, substitute,
                            transvect, z_names)

from .conftest import forms, sl2_matrices

x, y = sympy.symbols("x y")


def to_sympy(F: BinaryForm):
    n = F.order
    return sum(sympy.Rational(c.a.numerator, c.a.denominator) * x ** (n - i) * y ** i
               for i, c in enumerate(F.coeffs))


def from_sympy(expr, order: int) -> BinaryForm:
    P = sympy.Poly(sympy.expand(expr), x, y)
    return BinaryForm([Fraction(str(P.coeff_monomial(x ** (order - i) * y ** i)))
                       for i in range(order + 1)])


def sympy_transvectant(F: BinaryForm, G: BinaryForm, r: int) -> BinaryForm:
    """Textbook derivative formula evaluated by sympy."""
    m, n = F.order, G.order
    f, g = to_sympy(F), to_sympy(G)
    total = 0
    for k in range(r + 1):
        total += (-1) ** k * comb(r, k) * sympy.diff(f, x, r - k, y, k) * sympy.diff(g, x, k, y, r - k)
    scale = sympy.Rational(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n))
    return from_sympy(scale * total, m + n - 2 * r)


def test_small_transvectants():
    assert transvect(X0 * X1, X0 * X1, 2) == BinaryForm([Fraction(-1, 2)])
    assert transvect(X0 ** 2, X1 ** 2, 2) == BinaryForm([1])
    assert transvect(X0, X1, 1) == BinaryForm([1])
    # r = 0 is the product
    F = BinaryForm([1, 2, 3])
    assert transvect(F, X0, 0) == F * X0


@given(st.integers(0, 4).flatmap(lambda m: st.tuples(forms(m), st.integers(1, 4).flatmap(forms))),
       st.integers(0, 4))
def test_transvectant_matches_sympy(FG, r):
    F, G = FG
    if r > min(F.order, G.order):
        with pytest.raises(IndexTooLarge):
            transvect(F, G, r)
        return
    assert transvect(F, G, r) == sympy_transvectant(F, G, r)


@given(forms(4), forms(3), st.integers(0, 3))
def test_transvectant_symmetry(F, G, r):
    assert transvect(F, G, r) == transvect(G, F, r) * (-1) ** r


@given(forms(4), forms(2), st.integers(0, 2))
def test_omega_process_agrees_with_derivative_formula(F, G, r):
    assert gen_transvect([F, G], [(0, 1, r)]) == transvect(F, G, r)


@given(forms(3), forms(4), sl2_matrices(), st.integers(0, 3))
def test_transvectant_is_sl2_equivariant(F, G, N, r):
    lhs = transvect(substitute(F, N), substitute(G, N), r)
    assert lhs == substitute(transvect(F, G, r), N)


@given(forms(2), forms(4), forms(2))
def test_generalized_transvectant_is_equivariant(A, B, C):
    N = [[2, 3], [1, 2]]
    pairs = [(0, 1, 1), (0, 2, 1), (1, 2, 1)]
    before = gen_transvect([A, B, C], pairs)
    after = gen_transvect([substitute(A, N), substitute(B, N), substitute(C, N)], pairs)
    assert substitute(before, N) == after


def test_generalized_transvectant_errors():
    with pytest.raises(IndexTooLarge):
        gen_transvect([X0, X1], [(0, 1, 2)])
    with pytest.raises(UnknownVariablePair):
        gen_transvect([X0, X1], [(0, 2, 1)])
    with pytest.raises(UnknownVariablePair):
        gen_transvect([X0, X1], [(1, 1, 1)])


def test_multipoly_omega_and_collapse():
    names = z_names(0) + z_names(1)
    P = MultiPoly.from_form(X0 * X1, names, z_names(0)) * \
        MultiPoly.from_form(X0 * X1, names, z_names(1))
    Q = P.omega(0, 1).omega(0, 1)
    # undoing the 2!2!/(0!0!) normalisation of (xy, xy)_2 = -1/2
    assert Q.collapse([z_names(0), z_names(1)]) == BinaryForm([-2])
    with pytest.raises(UnknownVariablePair):
        P.omega(0, 2)


def test_multipoly_diff():
    names = ("u", "v")
    P = MultiPoly(names, {(3, 1): 2, (0, 2): 5})
    assert P.diff(0, 2) == MultiPoly(names, {(1, 1): 12})
    assert P.diff(1) == MultiPoly(names, {(3, 0): 2, (0, 1): 10})


@given(forms(3), forms(3))
def test_form_arithmetic(F, G):
    assert (F + G) - G == F
    assert (F * G) == (G * F)
    assert F * 2 == F + F
    with pytest.raises(OrderMismatch):
        F + BinaryForm([1, 0])


@given(forms(3), sl2_matrices(), sl2_matrices())
def test_substitute_composes(F, M, N):
    MN = [[sum(M[i][k] * N[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert substitute(substitute(F, M), N) == substitute(F, MN)


def test_evaluation_and_derivatives():
    F = BinaryForm([1, -3, 0, 2])  # X0^3 - 3 X0^2 X1 + 2 X1^3
    assert F(2, 1) == 8 - 12 + 2
    assert F.derivative(1, 0) == BinaryForm([3, -6, 0])
    assert F.derivative(0, 2) == BinaryForm([0, 12])
    assert F.derivative(2, 2) == BinaryForm([0])


def test_forms_over_quadratic_field():
    K = quadratic_field(-1)
    i = K.gen()
    F = BinaryForm([i, 1])
    G = BinaryForm([1, -i])
    assert (F * G).field is K
    assert transvect(F, G, 1) == BinaryForm([-i * i - 1])
