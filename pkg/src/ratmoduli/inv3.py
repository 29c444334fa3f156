"""Invariants and covariants of cubic maps, i.e. of pairs (f, g) of orders (2, 4).

The six basic invariants are

    d = (f, f)_2     i = (g, g)_4      j = (H, g)_4
    a = (g, f^2)_4   b = (H, f^2)_4    c = (T, f^3)_6

with H = (g, g)_2 and T = (g, H)_1.  They have weights 2, 2, 3, 3, 4, 6
and satisfy one relation (``relation3_residual``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import OrderMismatch
from .field import QQ, FieldElement, common_field
from .forms import FormPair
from .linalg import det
from .poly import BinaryForm, gen_transvect, transvect

WEIGHTS3 = (2, 2, 3, 3, 4, 6)


class InvariantTuple3(NamedTuple):
    d: FieldElement
    i: FieldElement
    j: FieldElement
    a: FieldElement
    b: FieldElement
    c: FieldElement

    @classmethod
    def of(cls, values: Sequence, field=None) -> "InvariantTuple3":
        fields = [v.field for v in values if isinstance(v, FieldElement)]
        F = common_field(*(fields + ([field] if field is not None else [])))
        return cls(*(v.lift(F) if isinstance(v, FieldElement) else F(v)
                     for v in values))

    @property
    def field(self):
        return common_field(*(x.field for x in self))


def _check_pair(pair: FormPair) -> None:
    if pair.f.order != 2 or pair.g.order != 4:
        raise OrderMismatch(
            f"expected orders (2, 4), got ({pair.f.order}, {pair.g.order})")


def invariants3(pair: FormPair) -> InvariantTuple3:
    """The six basic invariants through the transvectant pipeline."""
    _check_pair(pair)
    f, g = pair.f, pair.g
    H = transvect(g, g, 2)
    T = transvect(g, H, 1)
    f2 = f * f
    f3 = f2 * f
    vals = (
        transvect(f, f, 2),
        transvect(g, g, 4),
        transvect(H, g, 4),
        transvect(g, f2, 4),
        transvect(H, f2, 4),
        transvect(T, f3, 6),
    )
    return InvariantTuple3.of([v.coeffs[0] for v in vals], pair.field)


# Closed forms in the coefficients c1..c8 of
#   f = c1 X0^2 + c2 X0 X1 + c3 X1^2,
#   g = c4 X0^4 + c5 X0^3 X1 + c6 X0^2 X1^2 + c7 X0 X1^3 + c8 X1^4.
# Each term is (numerator, denominator, exponents of c1..c8).
_CLOSED_FORMS = {
    "d": [(-1, 2, (0, 2, 0, 0, 0, 0, 0, 0)), (2, 1, (1, 0, 1, 0, 0, 0, 0, 0))],
    "i": [(1, 6, (0, 0, 0, 0, 0, 2, 0, 0)), (-1, 2, (0, 0, 0, 0, 1, 0, 1, 0)),
          (2, 1, (0, 0, 0, 1, 0, 0, 0, 1))],
    "j": [(-1, 36, (0, 0, 0, 0, 0, 3, 0, 0)), (1, 8, (0, 0, 0, 0, 1, 1, 1, 0)),
          (-3, 8, (0, 0, 0, 1, 0, 0, 2, 0)), (-3, 8, (0, 0, 0, 0, 2, 0, 0, 1)),
          (1, 1, (0, 0, 0, 1, 0, 1, 0, 1))],
    "a": [(1, 1, (0, 0, 2, 1, 0, 0, 0, 0)), (-1, 2, (0, 1, 1, 0, 1, 0, 0, 0)),
          (1, 6, (0, 2, 0, 0, 0, 1, 0, 0)), (1, 3, (1, 0, 1, 0, 0, 1, 0, 0)),
          (-1, 2, (1, 1, 0, 0, 0, 0, 1, 0)), (1, 1, (2, 0, 0, 0, 0, 0, 0, 1))],
    "b": [(-1, 8, (0, 0, 2, 0, 2, 0, 0, 0)), (1, 3, (0, 0, 2, 1, 0, 1, 0, 0)),
          (1, 12, (0, 1, 1, 0, 1, 1, 0, 0)), (-1, 36, (0, 2, 0, 0, 0, 2, 0, 0)),
          (-1, 18, (1, 0, 1, 0, 0, 2, 0, 0)), (-1, 2, (0, 1, 1, 1, 0, 0, 1, 0)),
          (1, 24, (0, 2, 0, 0, 1, 0, 1, 0)), (1, 12, (1, 0, 1, 0, 1, 0, 1, 0)),
          (1, 12, (1, 1, 0, 0, 0, 1, 1, 0)), (-1, 8, (2, 0, 0, 0, 0, 0, 2, 0)),
          (1, 3, (0, 2, 0, 1, 0, 0, 0, 1)), (2, 3, (1, 0, 1, 1, 0, 0, 0, 1)),
          (-1, 2, (1, 1, 0, 0, 1, 0, 0, 1)), (1, 3, (2, 0, 0, 0, 0, 1, 0, 1))],
    "c": [(1, 32, (0, 0, 3, 0, 3, 0, 0, 0)), (-1, 8, (0, 0, 3, 1, 1, 1, 0, 0)),
          (-1, 32, (0, 1, 2, 0, 2, 1, 0, 0)), (1, 8, (0, 1, 2, 1, 0, 2, 0, 0)),
          (1, 4, (0, 0, 3, 2, 0, 0, 1, 0)), (-1, 16, (0, 1, 2, 1, 1, 0, 1, 0)),
          (1, 32, (0, 2, 1, 0, 2, 0, 1, 0)), (1, 32, (1, 0, 2, 0, 2, 0, 1, 0)),
          (-1, 8, (0, 2, 1, 1, 0, 1, 1, 0)), (-1, 8, (1, 0, 2, 1, 0, 1, 1, 0)),
          (1, 32, (0, 3, 0, 1, 0, 0, 2, 0)), (3, 16, (1, 1, 1, 1, 0, 0, 2, 0)),
          (-1, 32, (1, 2, 0, 0, 1, 0, 2, 0)), (-1, 32, (2, 0, 1, 0, 1, 0, 2, 0)),
          (1, 32, (2, 1, 0, 0, 0, 1, 2, 0)), (-1, 32, (3, 0, 0, 0, 0, 0, 3, 0)),
          (-1, 2, (0, 1, 2, 2, 0, 0, 0, 1)), (1, 4, (0, 2, 1, 1, 1, 0, 0, 1)),
          (1, 4, (1, 0, 2, 1, 1, 0, 0, 1)), (-1, 32, (0, 3, 0, 0, 2, 0, 0, 1)),
          (-3, 16, (1, 1, 1, 0, 2, 0, 0, 1)), (1, 8, (1, 2, 0, 0, 1, 1, 0, 1)),
          (1, 8, (2, 0, 1, 0, 1, 1, 0, 1)), (-1, 8, (2, 1, 0, 0, 0, 2, 0, 1)),
          (-1, 4, (1, 2, 0, 1, 0, 0, 1, 1)), (-1, 4, (2, 0, 1, 1, 0, 0, 1, 1)),
          (1, 16, (2, 1, 0, 0, 1, 0, 1, 1)), (1, 8, (3, 0, 0, 0, 0, 1, 1, 1)),
          (1, 2, (2, 1, 0, 1, 0, 0, 0, 2)), (-1, 4, (3, 0, 0, 0, 1, 0, 0, 2))],
}


def invariants3_appendix(*coeffs) -> InvariantTuple3:
    """The six invariants evaluated from their closed forms in c1..c8."""
    if len(coeffs) == 1:
        coeffs = tuple(coeffs[0])
    if len(coeffs) != 8:
        raise OrderMismatch("expected 8 coefficients")
    fields = [c.field for c in coeffs if isinstance(c, FieldElement)]
    F = common_field(*fields)
    cs = [c.lift(F) if isinstance(c, FieldElement) else F(c) for c in coeffs]
    out = []
    for name in "dijabc":
        total = F(0)
        for num, den, exps in _CLOSED_FORMS[name]:
            term = F(Fraction(num, den))
            for c, e in zip(cs, exps):
                if e:
                    term = term * c ** e
            total = total + term
        out.append(total)
    return InvariantTuple3(*out)


def pair_from_coeffs(coeffs: Sequence, field=None) -> FormPair:
    """(f, g) from the eight coefficients c1..c8."""
    return FormPair(BinaryForm(coeffs[:3], field), BinaryForm(coeffs[3:], field))


def c_tilde(t: InvariantTuple3) -> FieldElement:
    d, i, j, a, b, c = t
    return d * d * i / 6 - a * a / 2 + d * b / 2


def rho_from_invariants(t: InvariantTuple3) -> FieldElement:
    """Res(F0, F1) of the merged map, written in the invariants.

    The coefficient of c is +1/8; this is what the Sylvester resultant
    gives on every pair tried (see tests).
    """
    d, i, j, a, b, c = t
    return (i ** 3 / 8 + i * d * d / 384 - j * j * 3 / 4 - j * a * 3 / 16
            + a * a / 256 + i * b * 3 / 16 - d * b / 64 + c / 8)


def relation3_residual(t: InvariantTuple3) -> FieldElement:
    """RHS - LHS of the relation among d, i, j, a, b, c (zero on M3)."""
    d, i, j, a, b, c = t
    d3 = d ** 3
    rhs = (d3 * i ** 3 / 54 - d3 * j * j / 9 - d * i * i * a * a / 12
           - j * a ** 3 / 3 + d * j * a * b + i * a * a * b / 2
           - d * i * b * b / 2 - b ** 3)
    return rhs - 2 * c * c


def check_relation3(t: InvariantTuple3) -> bool:
    return not relation3_residual(t)


# -- closed forms for the quadratic covariant systems ----------------------

def _sym(m11, m12, m13, m22, m23, m33):
    return ((m11, m12, m13), (m12, m22, m23), (m13, m23, m33))


def C_closed(t: InvariantTuple3):
    d, i, j, a, b, c = t
    return _sym(d, a, b,
                b + i * d / 3, i * a / 6 + j * d / 3,
                j * a / 3 - i * b / 6 + i * i * d / 18)


def A_closed(t: InvariantTuple3):
    return (t.d, t.a, t.b)


def B_closed(t: InvariantTuple3):
    """B_ij; B23 and B33 carry corrected signs (checked by the pipeline)."""
    d, i, j, a, b, c = t
    return _sym(a, b + i * d / 3, i * a / 6 + j * d / 3,
                i * a / 2 + j * d / 3,
                j * a / 3 + i * b / 6 + i * i * d / 18,
                j * b / 3 + i * i * a / 36 + d * i * j / 18)


def C_tilde_closed(t: InvariantTuple3):
    d, i, j, a, b, c = t
    z = d * 0
    return _sym(d, a, z, b + i * d / 3, z, c_tilde(t))


def A_tilde_closed(t: InvariantTuple3):
    return (t.d, t.a, t.a * 0)


def B_tilde_closed(t: InvariantTuple3):
    d, i, j, a, b, c = t
    z = d * 0
    return _sym(a, b + i * d / 3, z,
                i * a / 2 + j * d / 3, -c,
                a * b / 2 - i * a * d / 12 - j * d * d / 6)


@dataclass(frozen=True)
class CovariantSystem3:
    """Quadratic covariants u, their brackets xi and the invariant matrices.

    xi_1 = (u2, u3)_1, xi_2 = (u3, u1)_1, xi_3 = (u1, u2)_1;
    A_i = (f, u_i)_2; B_ij is the generalized transvectant of g, u_i, u_j
    with two omega factors between g and each u; C_ij = (u_i, u_j)_2;
    r is the generalized transvectant of u1, u2, u3 with one omega factor
    per pair.  Then f = (1/r) sum A_i xi_i (plain) and
    g = (1/r^2) sum B_ij xi_i xi_j.
    """

    u: tuple
    xi: tuple
    A: tuple
    B: tuple
    C: tuple
    r: FieldElement
    variant: str


def covariant_system3(pair: FormPair, variant: str = "plain") -> CovariantSystem3:
    _check_pair(pair)
    f, g = pair.f, pair.g
    if variant == "plain":
        H = transvect(g, g, 2)
        u = (f, transvect(g, f, 2), transvect(H, f, 2))
    elif variant == "tilde":
        u2 = transvect(f, g, 2)
        u = (f, u2, transvect(u2, f, 1))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    xi = (transvect(u[1], u[2], 1), transvect(u[2], u[0], 1),
          transvect(u[0], u[1], 1))
    A = tuple(transvect(f, uk, 2).coeffs[0] for uk in u)
    C = tuple(tuple(transvect(u[p], u[q], 2).coeffs[0] for q in range(3))
              for p in range(3))
    B = tuple(tuple(gen_transvect([g, u[p], u[q]], [(0, 1, 2), (0, 2, 2)]).coeffs[0]
                    for q in range(3)) for p in range(3))
    r = gen_transvect(list(u), [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).coeffs[0]
    return CovariantSystem3(u, xi, A, B, C, r, variant)


def coefficient_matrix(forms: Sequence[BinaryForm]):
    return [list(F.coeffs) for F in forms]


def det3(M) -> FieldElement:
    return det(M)
