"""Invariants of quadratic maps, i.e. of pairs (f, g) of orders (1, 3).

With H = (g, g)_2 and t = (g, H)_1 the basic invariants are

    s1 = (f^3, g)_3   s2 = (H, f^2)_2   s3 = (t, g)_3   r = (t, f^3)_3

of weights 4, 4, 4, 6, tied by r^2 = s1^2 s3 / 2 - s2^3 / 2.  The linear
covariants V0 = (H, f)_1, V1 = (g, f^2)_2 give the second expression
r = (V1, V0)_1 used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DegenerateLocus, OrderMismatch
from .field import FieldElement, common_field
from .forms import FormPair
from .poly import BinaryForm, transvect

WEIGHTS2 = (4, 4, 4, 6)


class InvariantTuple2(NamedTuple):
    s1: FieldElement
    s2: FieldElement
    s3: FieldElement
    r: FieldElement

    @classmethod
    def of(cls, values: Sequence, field=None) -> "InvariantTuple2":
        fields = [v.field for v in values if isinstance(v, FieldElement)]
        F = common_field(*(fields + ([field] if field is not None else [])))
        return cls(*(v.lift(F) if isinstance(v, FieldElement) else F(v)
                     for v in values))

    @property
    def field(self):
        return common_field(*(x.field for x in self))


@dataclass(frozen=True)
class SigmaPair:
    sigma1: FieldElement
    sigma2: FieldElement


@dataclass(frozen=True)
class Covariants2:
    H: BinaryForm
    t: BinaryForm
    V0: BinaryForm
    V1: BinaryForm
    b0: FieldElement
    b1: FieldElement
    R: FieldElement


def _check_pair(pair: FormPair) -> None:
    if pair.f.order != 1 or pair.g.order != 3:
        raise OrderMismatch(
            f"expected orders (1, 3), got ({pair.f.order}, {pair.g.order})")


def covariants2(pair: FormPair) -> Covariants2:
    _check_pair(pair)
    f, g = pair.f, pair.g
    H = transvect(g, g, 2)
    t = transvect(g, H, 1)
    V0 = transvect(H, f, 1)
    V1 = transvect(g, f * f, 2)
    b0 = transvect(V1, f, 1).coeffs[0]
    b1 = transvect(V0, f, 1).coeffs[0]
    R = transvect(t, f * f * f, 3).coeffs[0]
    return Covariants2(H, t, V0, V1, b0, b1, R)


def invariants2(pair: FormPair) -> InvariantTuple2:
    cov = covariants2(pair)
    f, g = pair.f, pair.g
    s1 = transvect(f * f * f, g, 3).coeffs[0]
    s2 = transvect(cov.H, f * f, 2).coeffs[0]
    s3 = transvect(cov.t, g, 3).coeffs[0]
    r = transvect(cov.V1, cov.V0, 1).coeffs[0]
    if r != cov.R:
        raise AssertionError("the two expressions for r disagree")
    return InvariantTuple2.of([s1, s2, s3, r], pair.field)


def relation2_residual(t: InvariantTuple2) -> FieldElement:
    s1, s2, s3, r = t
    return r * r - s1 * s1 * s3 / 2 + s2 ** 3 / 2


def check_relation2(t: InvariantTuple2) -> bool:
    return not relation2_residual(t)


# (s1, s2, s3) = S (tau1, tau2, rho) with tau_i = sigma_i * rho; S has
# determinant 4 and the inverse below.
S_MATRIX = ((Fraction(5), Fraction(2), Fraction(6)),
            (Fraction(2, 3), Fraction(2, 3), Fraction(-4)),
            (Fraction(-4, 27), Fraction(2, 27), Fraction(2, 9)))
S_INVERSE = ((Fraction(1, 9), Fraction(0), Fraction(-3)),
             (Fraction(1, 9), Fraction(1, 2), Fraction(6)),
             (Fraction(1, 27), Fraction(-1, 6), Fraction(1, 2)))


def tau_rho_from_s(t: InvariantTuple2):
    s = (t.s1, t.s2, t.s3)
    return tuple(sum((row[k] * s[k] for k in range(3)), t.s1 * 0)
                 for row in S_INVERSE)


def sigma_from_s(t: InvariantTuple2):
    """(SigmaPair(sigma1, sigma2), rho) from the s-invariants."""
    tau1, tau2, rho = tau_rho_from_s(t)
    if not rho:
        raise DegenerateLocus("recovered resultant is zero")
    return SigmaPair(tau1 / rho, tau2 / rho), rho


def r_squared_from_tau(tau1, tau2, rho):
    return (-2 * tau1 ** 3 - tau1 ** 2 * tau2 + tau1 ** 2 * rho
            + 8 * tau1 * tau2 * rho - 12 * tau1 * rho ** 2 + 4 * tau2 ** 2 * rho
            - 12 * tau2 * rho ** 2 + 36 * rho ** 3)


@dataclass(frozen=True)
class ReconstructionData2:
    """a[k] is a_ijk for any index triple with k ones; b0, b1 as in f."""

    a: tuple
    b0: FieldElement
    b1: FieldElement


def reconstruction_data2(t: InvariantTuple2) -> ReconstructionData2:
    """Invariant coefficients of the presentations of f and g in V0, V1.

    r f = b0 V0 - b1 V1 with b0 = -s1 and b1 = s2.  The a-values are
    normalized so that r^3 g = (9/2) sum (-1)^(i+j+k) a_ijk V_i' V_j' V_k'
    where the index i' = i+1 is taken mod 2.
    """
    s1, s2, s3, r = t
    a = (s3 * r / 9, r * 0, -s2 * r / 9, 2 * s1 * r / 9)
    return ReconstructionData2(a, -s1, s2)
