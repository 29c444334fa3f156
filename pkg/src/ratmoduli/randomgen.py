"""Seeded random maps, pairs and group elements for tests and ``selftest``,
plus the normal forms of the automorphism strata of cubic maps."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from .errors import DegenerateMap
from .field import QQ, Field, FieldElement, quadratic_field
from .forms import FormPair, RationalMap, merge, resultant
from .inv3 import pair_from_coeffs
from .moduli import Stratum
from .poly import BinaryForm


def random_rational(rng: random.Random, height: int = 10) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_element(rng: random.Random, height: int = 10, field: Field = QQ) -> FieldElement:
    if field.D is None:
        return field(rng.randint(-height, height))
    return field(rng.randint(-height, height), rng.randint(-height, height))


def random_form(rng: random.Random, order: int, height: int = 10,
                field: Field = QQ) -> BinaryForm:
    return BinaryForm([random_element(rng, height, field) for _ in range(order + 1)], field)


def random_map(rng: random.Random, degree: int, height: int = 10,
               field: Field = QQ) -> RationalMap:
    """Random [F0 : F1] with integer coefficients of the given height."""
    while True:
        F0 = random_form(rng, degree, height, field)
        F1 = random_form(rng, degree, height, field)
        if resultant(F0, F1):
            return RationalMap(F0, F1)


def random_pair(rng: random.Random, degree: int, height: int = 10,
                field: Field = QQ) -> FormPair:
    """Random (f, g) of orders (degree - 1, degree + 1), no resultant check."""
    return FormPair(random_form(rng, degree - 1, height, field),
                    random_form(rng, degree + 1, height, field))


def random_sl2(rng: random.Random, height: int = 5) -> list[list[Fraction]]:
    """Product of elementary and diagonal matrices, so det = 1 exactly."""
    M = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    for _ in range(3):
        t = random_rational(rng, height)
        E = [[1, t], [0, 1]] if rng.random() < 0.5 else [[1, 0], [t, 1]]
        M = [[sum(M[i][k] * E[k][j] for k in range(2)) for j in range(2)]
             for i in range(2)]
    q = random_rational(rng, height) or Fraction(1)
    return [[M[0][0] * q, M[0][1] * q], [M[1][0] / q, M[1][1] / q]]


def _nonzero(rng: random.Random, height: int) -> int:
    return rng.choice([v for v in range(-height, height + 1) if v])


# coefficient vectors [c1..c8]: f = c1 X0^2 + c2 X0 X1 + c3 X1^2,
# g = c4 X0^4 + c5 X0^3 X1 + ... + c8 X1^4
NORMAL_FORMS: dict[Stratum, tuple[int, Callable[..., list]]] = {
    Stratum.C2_1: (4, lambda s, t, u, v: [0, s, 0, t, 0, u, 0, v]),
    Stratum.C2_2: (4, lambda s, t, u, v: [s, 0, t, 0, u, 0, v, 0]),
    Stratum.C3: (3, lambda s, t, u: [s, 0, 0, 0, t, 0, 0, u]),
    Stratum.D4_1: (2, lambda s, t: [0, s, 0, t, 0, 0, 0, -t]),
    Stratum.D4_2: (2, lambda s, t: [0, 0, 0, s, 0, t, 0, s]),
    Stratum.D8: (1, lambda s: [0, 0, 0, s, 0, 0, 0, s]),
}


def a4_normal_form() -> FormPair:
    K = quadratic_field(-3)
    return pair_from_coeffs([0, 0, 0, 1, 0, -2 * K.gen(), 0, 1], K)


def random_normal_form(rng: random.Random, stratum: Stratum, height: int = 9,
                       tries: int = 1000) -> Optional[FormPair]:
    """A normal form of the stratum with random nonzero parameters whose
    underlying map is nondegenerate."""
    if stratum == Stratum.A4:
        return a4_normal_form()
    nparams, build = NORMAL_FORMS[stratum]
    for _ in range(tries):
        pair = pair_from_coeffs(build(*(_nonzero(rng, height) for _ in range(nparams))))
        try:
            merge(pair)
        except DegenerateMap:
            continue
        return pair
    return None
