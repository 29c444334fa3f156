from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given

from ratmoduli.errors import DegenerateLocus, OrderMismatch
from ratmoduli.forms import RationalMap, merge_forms, resultant, split
from ratmoduli.inv2 import (S_INVERSE, S_MATRIX, InvariantTuple2, check_relation2,
                            covariants2, invariants2, r_squared_from_tau, sigma_from_s,
                            tau_rho_from_s)
from ratmoduli.poly import X0, X1

from .conftest import nonzero_rationals, pairs, sl2_matrices


def test_square_map():
    t = invariants2(split(RationalMap(X0 ** 2, X1 ** 2)))
    assert tuple(t) == (16, Fraction(-8, 3), Fraction(-2, 27), 0)
    sigma, rho = sigma_from_s(t)
    assert (sigma.sigma1, sigma.sigma2, rho) == (2, 0, 1)


def test_multiplier_oracle_for_square_map():
    # z^2 has fixed points 0, infinity (multiplier 0) and 1 (multiplier 2)
    mults = [0, 0, 2]
    s1 = sum(mults)
    s2 = mults[0] * mults[1] + mults[0] * mults[2] + mults[1] * mults[2]
    sigma, _ = sigma_from_s(invariants2(split(RationalMap(X0 ** 2, X1 ** 2))))
    assert (sigma.sigma1, sigma.sigma2) == (s1, s2)


def test_s_matrix_inverse():
    for p in range(3):
        for q in range(3):
            entry = sum(S_MATRIX[p][k] * S_INVERSE[k][q] for k in range(3))
            assert entry == (p == q)


@given(pairs(2))
def test_relation_and_second_r(pair):
    t = invariants2(pair)  # raises if the two expressions for r differ
    assert check_relation2(t)
    assert covariants2(pair).R == t.r


@given(pairs(2))
def test_rho_is_the_resultant(pair):
    F0, F1 = merge_forms(pair)
    assert tau_rho_from_s(invariants2(pair))[2] == resultant(F0, F1)


@given(pairs(2))
def test_r_squared_from_multiplier_data(pair):
    t = invariants2(pair)
    tau1, tau2, rho = tau_rho_from_s(t)
    assert r_squared_from_tau(tau1, tau2, rho) == t.r ** 2


@given(pairs(2), sl2_matrices())
def test_sl2_invariance(pair, N):
    assert invariants2(pair.act(N)) == invariants2(pair)


@given(pairs(2), nonzero_rationals)
def test_beta_scaling(pair, beta):
    # exponents are the bidegrees (deg_f + 2 deg_g) of s1, s2, s3, r
    t = invariants2(pair)
    s = invariants2(pair.act([[1, 0], [0, 1]], beta))
    assert tuple(s) == tuple(x * beta ** e for x, e in zip(t, (5, 6, 8, 9)))


def test_degenerate_rho():
    with pytest.raises(DegenerateLocus):
        sigma_from_s(InvariantTuple2.of([0, 0, 0, 0]))


def test_wrong_orders_rejected():
    with pytest.raises(OrderMismatch):
        invariants2(split(RationalMap(X0 ** 3, X1 ** 3)))
