"""Rational maps of P^1 as pairs of forms, and their (f, g) decomposition.

A map [F0 : F1] of degree d splits into the divergence form
f = dF0/dX0 + dF1/dX1 (order d-1) and the fixed-point form
g = X1 F0 - X0 F1 (order d+1).  ``merge`` inverts the split.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (DegenerateMap, NonRescalable, NotAFixedPoint,
                     OrderMismatch)
from .field import FieldElement, common_field
from .linalg import det, inverse
from .poly import X0, X1, BinaryForm, substitute


def resultant(F: BinaryForm, G: BinaryForm) -> FieldElement:
    """Sylvester resultant of two forms of the same order."""
    if F.order != G.order:
        raise OrderMismatch(f"orders {F.order} and {G.order}")
    d = F.order
    field = common_field(F.field, G.field)
    if d == 0:
        return field(1)
    zero = field(0)
    rows = []
    for src in (F, G):
        for shift in range(d):
            row = [zero] * (2 * d)
            for i, c in enumerate(src.coeffs):
                row[shift + i] = c.lift(field)
            rows.append(row)
    return det(rows)


@dataclass(frozen=True)
class FormPair:
    """The pair (f, g) with orders (d-1, d+1)."""

    f: BinaryForm
    g: BinaryForm

    def __post_init__(self):
        if self.g.order != self.f.order + 2:
            raise OrderMismatch(
                f"pair orders ({self.f.order}, {self.g.order}) do not differ by 2")

    @property
    def degree(self) -> int:
        return self.f.order + 1

    @property
    def field(self):
        return common_field(self.f.field, self.g.field)

    def act(self, N: Sequence[Sequence], beta=1) -> "FormPair":
        """(beta f o N, beta^2 g o N)."""
        return FormPair(substitute(self.f, N) * beta,
                        substitute(self.g, N) * (beta * beta))


@dataclass(frozen=True)
class RationalMap:
    """[F0 : F1] with Res(F0, F1) != 0."""

    F0: BinaryForm
    F1: BinaryForm

    def __post_init__(self):
        if self.F0.order != self.F1.order:
            raise OrderMismatch("F0 and F1 must have the same order")
        if self.F0.order < 2:
            raise DegenerateMap("degree must be at least 2")
        if not resultant(self.F0, self.F1):
            raise DegenerateMap("Res(F0, F1) = 0")

    @property
    def degree(self) -> int:
        return self.F0.order

    @property
    def field(self):
        return common_field(self.F0.field, self.F1.field)


def split(m: RationalMap) -> FormPair:
    f = m.F0.derivative(1, 0) + m.F1.derivative(0, 1)
    g = X1 * m.F0 - X0 * m.F1
    return FormPair(f, g)


def merge_forms(pair: FormPair) -> tuple[BinaryForm, BinaryForm]:
    """(F0, F1) with split = pair, without the resultant check."""
    d = pair.degree
    F0 = (X0 * pair.f + pair.g.derivative(0, 1)) / (d + 1)
    F1 = (X1 * pair.f - pair.g.derivative(1, 0)) / (d + 1)
    return F0, F1


def merge(pair: FormPair) -> RationalMap:
    F0, F1 = merge_forms(pair)
    return RationalMap(F0, F1)


def conjugate(m: RationalMap, N: Sequence[Sequence]) -> RationalMap:
    """N^-1 o m o N, i.e. X -> N^-1 F(N X)."""
    G0 = substitute(m.F0, N)
    G1 = substitute(m.F1, N)
    (p, q), (r, s) = inverse(N)
    return RationalMap(G0 * p + G1 * q, G0 * r + G1 * s)


def fixed_point_multiplier(m: RationalMap, point) -> FieldElement:
    """Multiplier of the fixed point [xi0 : xi1] of ``m``.

    With F(xi) = lam * xi, rescaling xi by mu with mu^(d-1) = 1/lam makes
    the point satisfy F(xi) = xi; since f has order d-1 the rescaled value
    f(mu xi) - d equals f(xi)/lam - d, so no root has to be taken.
    """
    x0, x1 = point
    if not x0 and not x1:
        raise NotAFixedPoint("(0, 0) is not a point")
    pair = split(m)
    if pair.g(x0, x1):
        raise NotAFixedPoint(f"g does not vanish at ({x0}, {x1})")
    v0, v1 = m.F0(x0, x1), m.F1(x0, x1)
    lam = v0 / x0 if x0 else v1 / x1
    if not lam:
        raise NonRescalable("F vanishes at the point")
    return pair.f(x0, x1) / lam - m.degree
