from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ratmoduli.field import QQ, quadratic_field
from ratmoduli.forms import FormPair
from ratmoduli.poly import BinaryForm

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def acceptance():
    return ACCEPTANCE


small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
nonzero_rationals = rationals.filter(bool)
quad_fields = st.sampled_from([quadratic_field(D) for D in (-3, -1, 2, 5, -7)])


def forms(order: int, elements=small_ints):
    return st.lists(elements, min_size=order + 1, max_size=order + 1).map(
        lambda cs: BinaryForm(cs, QQ))


def pairs(degree: int):
    return st.builds(FormPair, forms(degree - 1), forms(degree + 1))


@st.composite
def sl2_matrices(draw):
    """det 1 by construction: a product of shears and a diagonal."""
    t1, t2, t3 = draw(rationals), draw(rationals), draw(rationals)
    q = draw(nonzero_rationals)
    M = [[Fraction(1), t1], [Fraction(0), Fraction(1)]]
    for E in ([[1, 0], [t2, 1]], [[1, t3], [0, 1]]):
        M = [[sum(M[i][k] * E[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return [[M[0][0] * q, M[0][1] * q], [M[1][0] / q, M[1][1] / q]]
