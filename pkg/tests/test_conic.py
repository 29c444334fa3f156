from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from ratmoduli.conic import (Conic, diagonalize, has_rational_point, parametrize,
                             tau_parametrize, tilde_conic, verify_local_certificate)
from ratmoduli.errors import PointNotOnConic, PreconditionViolated, SingularConic
from ratmoduli.poly import transvect

from .conftest import small_ints


def has_zero_mod(coeffs, n):
    """Brute force: a primitive zero of the diagonal form modulo n exists."""
    A, B, C = coeffs
    return any((A * x * x + B * y * y + C * z * z) % n == 0 and
               any(v % p for v in (x, y, z) for p in _primes(n))
               for x, y, z in product(range(n), repeat=3))


def _primes(n):
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def small_zero(C: Conic, bound: int = 12):
    for v in product(range(-bound, bound + 1), repeat=3):
        if any(v) and not C(v):
            return v
    return None


coeffs6 = st.lists(small_ints, min_size=6, max_size=6)


@given(coeffs6)
def test_point_search_is_sound(cs):
    C = Conic.from_coefficients(*cs)
    res = has_rational_point(C)
    if res.found:
        assert any(res.point) and C(res.point) == 0
    else:
        assert res.outcome == "impossible"
        # an obstructed conic has no small zero either
        assert small_zero(C, 6) is None


@given(coeffs6)
def test_point_search_is_complete_on_small_zeros(cs):
    C = Conic.from_coefficients(*cs)
    if small_zero(C, 4) is not None:
        assert has_rational_point(C).found


def test_real_definite_certificate():
    res = has_rational_point(Conic.from_coefficients(1, 1, 1))
    assert res.outcome == "impossible"
    assert res.certificate["kind"] == "real-definite"


def test_a4_conic_has_no_point():
    C = Conic.from_coefficients(1, 3, -2)
    res = has_rational_point(C)
    assert res.outcome == "impossible"
    assert res.certificate["kind"] == "p-adic" and res.certificate["prime"] == 3
    assert res.certificate["verified_exhaustively"] is True
    assert not has_zero_mod((1, 3, -2), 9)


@pytest.mark.parametrize("coeffs,p", [((1, 3, -2), 3), ((1, 1, -3), 3), ((1, 2, -5), 5)])
def test_local_certificate_matches_brute_force(coeffs, p):
    assert verify_local_certificate(coeffs, p) == (not has_zero_mod(coeffs, p * p))


def test_solvable_examples():
    for cs in [(1, 1, -2), (1, -1, 0, 0, 0, 1), (3, 5, -8), (13, 17, -1)]:
        C = Conic.from_coefficients(*cs)
        res = has_rational_point(C)
        assert res.found and C(res.point) == 0


def test_large_coefficients():
    # x^2 + y^2 = p z^2 for a prime p = 1 mod 4 near 10^4
    C = Conic.from_coefficients(1, 1, -10009)
    res = has_rational_point(C)
    assert res.found and C(res.point) == 0


def test_singular_conics():
    C = Conic.from_coefficients(1, -1, 0)
    assert C.rank() == 2
    res = has_rational_point(C)
    assert res.found and C(res.point) == 0
    with pytest.raises(SingularConic):
        parametrize(C, res.point)


@given(coeffs6)
def test_diagonalize(cs):
    C = Conic.from_coefficients(*cs)
    diag, T = diagonalize(C)
    # T^t M T is diagonal
    for p in range(3):
        for q in range(3):
            val = sum(T[a][p] * C.M[a][b] * T[b][q] for a in range(3) for b in range(3))
            assert val == (diag[p] if p == q else 0)


@given(coeffs6)
def test_parametrization_lies_on_conic(cs):
    C = Conic.from_coefficients(*cs)
    assume(C.rank() == 3)
    res = has_rational_point(C)
    assume(res.found)
    th = parametrize(C, res.point)
    for s, t in [(0, 1), (1, 0), (2, 3), (-5, 7)]:
        assert C([q(s, t) for q in th]) == 0


def test_parametrize_errors():
    with pytest.raises(PointNotOnConic):
        parametrize(Conic.from_coefficients(1, 1, -2), (1, 0, 0))


@given(small_ints, small_ints, small_ints)
def test_tau_brackets(C11, C12, C22):
    D = tilde_conic(Fraction(C11), Fraction(C12), Fraction(C22))
    assume(D.rank() == 3)
    res = has_rational_point(D)
    assume(res.found and res.point[2])
    t = res.point
    tau = tau_parametrize((C11, C12, C22), t)
    Cm = ((C11, C12), (C12, C22))
    for p in range(2):
        for q in range(2):
            assert transvect(tau[p], tau[q], 2).coeffs[0] == 4 * t[2] ** 2 * Cm[p][q]


def test_tau_preconditions():
    with pytest.raises(PreconditionViolated):
        tau_parametrize((1, 0, 1), (1, 1, 1))
