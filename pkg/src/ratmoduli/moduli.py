"""Weighted projective moduli points, equality over the algebraic closure,
validation and the automorphism-stratum classifier for cubic maps."""

from __future__ import annotations

from enum import Enum
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import ZeroPoint
from .field import FieldElement, common_field
from .inv2 import WEIGHTS2, InvariantTuple2, check_relation2, tau_rho_from_s
from .inv3 import (WEIGHTS3, InvariantTuple3, c_tilde, check_relation3,
                   rho_from_invariants)


class WeightedPoint:
    """Coordinates up to (x_k) ~ (alpha^w_k x_k); subclasses fix the weights."""

    weights: tuple = ()
    tuple_type = tuple

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if isinstance(coords, WeightedPoint):
            coords = coords.coords
        if self.tuple_type is tuple:
            fields = [c.field for c in coords if isinstance(c, FieldElement)]
            F = common_field(*fields)
            coords = tuple(c.lift(F) if isinstance(c, FieldElement) else F(c)
                           for c in coords)
        elif not isinstance(coords, self.tuple_type):
            coords = self.tuple_type.of(coords)
        if len(coords) != len(self.weights):
            raise ValueError(f"expected {len(self.weights)} coordinates")
        self.coords = coords

    @property
    def field(self):
        return common_field(*(c.field for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def rescale(self, alpha) -> "WeightedPoint":
        return type(self)([c * alpha ** w for c, w in zip(self.coords, self.weights)])

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and tuple(self.coords) == tuple(other.coords)

    def __hash__(self) -> int:
        return hash(tuple(self.coords))

    def __repr__(self) -> str:
        inner = ", ".join(str(c) for c in self.coords)
        return f"{type(self).__name__}([{inner}])"


class ModuliPoint3(WeightedPoint):
    """[d : i : j : a : b : c] with weights (2, 2, 3, 3, 4, 6)."""

    weights = WEIGHTS3
    tuple_type = InvariantTuple3
    __slots__ = ()


class ModuliPoint2(WeightedPoint):
    """[s1 : s2 : s3 : r] with weights (4, 4, 4, 6)."""

    weights = WEIGHTS2
    tuple_type = InvariantTuple2
    __slots__ = ()


def _bezout(ws: Sequence[int]) -> tuple[int, list[int]]:
    """g and e with sum e_k w_k = g = gcd(ws)."""
    g, coeffs = ws[0], [1]
    for w in ws[1:]:
        # extended Euclid on (g, w)
        old_r, r, old_s, s, old_t, t = g, w, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    return g, coeffs


def wp_equal(P: WeightedPoint, Q: WeightedPoint) -> bool:
    """True iff Q_k = alpha^w_k P_k for some nonzero alpha over the closure."""
    if P.weights != Q.weights:
        raise ValueError("points live in different weighted spaces")
    if P.is_zero() or Q.is_zero():
        raise ZeroPoint("weighted projective points must be nonzero")
    support = [k for k, c in enumerate(P.coords) if c]
    if support != [k for k, c in enumerate(Q.coords) if c]:
        return False
    ratios = [Q.coords[k] / P.coords[k] for k in support]
    ws = [P.weights[k] for k in support]
    for x in range(len(ws)):
        for y in range(x + 1, len(ws)):
            if ratios[x] ** ws[y] != ratios[y] ** ws[x]:
                return False
    g, exps = _bezout(ws)
    rho = reduce(lambda acc, pair: acc * pair[0] ** pair[1],
                 zip(ratios, exps), ratios[0] ** 0)
    return all(rho ** (w // g) == q for q, w in zip(ratios, ws))


def weight_gcd(P: WeightedPoint) -> int:
    return reduce(gcd, (w for w, c in zip(P.weights, P.coords) if c), 0)


class Stratum(str, Enum):
    Trivial = "Trivial"
    C2_1 = "C2_1"
    C2_2 = "C2_2"
    C3 = "C3"
    D4_1 = "D4_1"
    D4_2 = "D4_2"
    D8 = "D8"
    A4 = "A4"


# covering relation: key strictly contains each listed stratum
_BELOW = {
    Stratum.Trivial: (Stratum.C2_1, Stratum.C2_2, Stratum.C3),
    Stratum.C2_1: (Stratum.D4_2, Stratum.D4_1),
    Stratum.C2_2: (Stratum.D4_1,),
    Stratum.C3: (Stratum.A4,),
    Stratum.D4_2: (Stratum.A4, Stratum.D8),
    Stratum.D4_1: (Stratum.D8,),
    Stratum.D8: (),
    Stratum.A4: (),
}


def is_deeper_or_equal(s: Stratum, t: Stratum) -> bool:
    """True if stratum s lies in (the closure of) stratum t."""
    if s == t:
        return True
    return any(is_deeper_or_equal(s, u) for u in _BELOW[t])


def _ideal_values(t: InvariantTuple3) -> dict[str, FieldElement]:
    return dict(zip("dijabc", t), ct=c_tilde(t))


_IDEALS = (
    (Stratum.A4, ("c", "b", "a", "i", "d")),
    (Stratum.D8, ("d", "j", "a", "b", "c")),
    (Stratum.D4_1, ("a", "j", "c", "ct")),
    (Stratum.D4_2, ("d", "a", "b", "c")),
    (Stratum.C3, ("d", "i", "b")),
    (Stratum.C2_1, ("c", "ct")),
    (Stratum.C2_2, ("a", "j")),
)


def classify_aut(P: ModuliPoint3 | InvariantTuple3) -> Stratum:
    """Deepest stratum whose ideal vanishes at P (Trivial if none)."""
    t = P.coords if isinstance(P, ModuliPoint3) else P
    vals = _ideal_values(t)
    for stratum, gens in _IDEALS:
        if not any(vals[g] for g in gens):
            return stratum
    return Stratum.Trivial


def validate3(P: ModuliPoint3 | InvariantTuple3) -> str:
    """"ok", "violates_syzygy" or "degenerate_rho"."""
    t = P.coords if isinstance(P, ModuliPoint3) else P
    if not check_relation3(t):
        return "violates_syzygy"
    if not rho_from_invariants(t):
        return "degenerate_rho"
    return "ok"


def validate2(P: ModuliPoint2 | InvariantTuple2) -> str:
    t = P.coords if isinstance(P, ModuliPoint2) else P
    if not check_relation2(t):
        return "violates_syzygy"
    if not tau_rho_from_s(t)[2]:
        return "degenerate_rho"
    return "ok"
