from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ratmoduli.errors import ZeroPoint
from ratmoduli.field import QQ, quadratic_field
from ratmoduli.forms import RationalMap, split
from ratmoduli.inv3 import invariants3, pair_from_coeffs
from ratmoduli.moduli import (ModuliPoint2, ModuliPoint3, Stratum, _bezout, classify_aut,
                              is_deeper_or_equal, validate2, validate3, weight_gcd,
                              wp_equal)
from ratmoduli.poly import X0, X1
from ratmoduli.randomgen import random_normal_form

from .conftest import nonzero_rationals, pairs, rationals

points3 = st.lists(rationals, min_size=6, max_size=6).map(ModuliPoint3).filter(
    lambda P: not P.is_zero())


@given(st.lists(st.integers(1, 12), min_size=1, max_size=6))
def test_bezout(ws):
    g, e = _bezout(ws)
    assert g == __import__("math").gcd(*ws)
    assert sum(a * b for a, b in zip(e, ws)) == g


@given(points3, nonzero_rationals, nonzero_rationals)
def test_wp_equal_is_an_equivalence(P, alpha, beta):
    Q = P.rescale(alpha)
    R = Q.rescale(beta)
    assert wp_equal(P, P)
    assert wp_equal(P, Q) and wp_equal(Q, P)
    assert wp_equal(P, R)


@given(points3, nonzero_rationals)
def test_wp_equal_detects_perturbation(P, alpha):
    k = next(n for n, c in enumerate(P.coords) if c)
    coords = list(P.rescale(alpha).coords)
    coords[k] = coords[k] * 2
    assert not wp_equal(P, ModuliPoint3(coords))


def test_wp_equal_over_the_closure():
    # alpha = sqrt(2) is not in Q but the two rational points are still equal
    P = ModuliPoint3([1, 1, 0, 0, 1, 1])
    assert wp_equal(P, ModuliPoint3([2, 2, 0, 0, 4, 8]))
    # alpha^2 = -2i over Q(i)
    K = quadratic_field(-1)
    i = K.gen()
    assert wp_equal(ModuliPoint3([1, 0, 0, 0, 0, 1]), ModuliPoint3([-2 * i, 0, 0, 0, 0, 8 * i]))
    # odd weights see the sign of alpha^3 relative to alpha^2
    assert not wp_equal(ModuliPoint3([1, 0, 1, 0, 0, 0]), ModuliPoint3([1, 0, 2, 0, 0, 0]))


def test_wp_equal_errors():
    with pytest.raises(ZeroPoint):
        wp_equal(ModuliPoint3([0] * 6), ModuliPoint3([1] * 6))
    with pytest.raises(ValueError):
        wp_equal(ModuliPoint3([1] * 6), ModuliPoint2([1] * 4))


def test_weight_gcd():
    assert weight_gcd(ModuliPoint3([1, 0, 0, 0, 1, 1])) == 2
    assert weight_gcd(ModuliPoint3([0, 0, 1, 0, 0, 1])) == 3
    assert weight_gcd(ModuliPoint3([1, 0, 1, 0, 0, 0])) == 1


def test_poset():
    for s in Stratum:
        assert is_deeper_or_equal(s, Stratum.Trivial)
        assert is_deeper_or_equal(s, s)
    assert is_deeper_or_equal(Stratum.D8, Stratum.C2_2)
    assert is_deeper_or_equal(Stratum.A4, Stratum.C3)
    assert not is_deeper_or_equal(Stratum.C3, Stratum.C2_1)
    assert not is_deeper_or_equal(Stratum.A4, Stratum.D4_1)


def test_cube_map_is_d4_1():
    t = invariants3(split(RationalMap(X0 ** 3, X1 ** 3)))
    assert classify_aut(t) == Stratum.D4_1
    assert validate3(ModuliPoint3(t)) == "ok"


@pytest.mark.parametrize("stratum", [s for s in Stratum if s != Stratum.Trivial])
def test_normal_forms_classify_deeper_or_equal(stratum):
    rng = random.Random(stratum.value)
    for _ in range(5):
        pair = random_normal_form(rng, stratum)
        assert is_deeper_or_equal(classify_aut(invariants3(pair)), stratum)


@given(pairs(3))
def test_validate3(pair):
    t = invariants3(pair)
    assume(any(t))
    assert validate3(t) in ("ok", "degenerate_rho")
    assert validate3(t._replace(c=t.c + 1)) == "violates_syzygy"


def test_validate2():
    from ratmoduli.inv2 import invariants2
    t = invariants2(split(RationalMap(X0 ** 2, X1 ** 2)))
    assert validate2(ModuliPoint2(t)) == "ok"
    assert validate2(ModuliPoint2([1, 0, 0, 1])) == "violates_syzygy"
    assert validate2(ModuliPoint2([0, 0, 0, 0])) == "degenerate_rho"


def test_mixed_fields_promote():
    K = quadratic_field(-3)
    P = ModuliPoint3([1, 0, 0, 0, K.gen(), 0])
    assert P.field is K
    assert ModuliPoint3([1, 0, 0, 0, 1, 0]).field is QQ
