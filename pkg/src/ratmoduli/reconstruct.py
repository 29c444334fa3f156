"""From a moduli point back to a map: obstruction conics and explicit models.

Degree 3.  For a point P = [d:i:j:a:b:c] with coordinates in k the
quadratic covariants xi_i of any model satisfy sum C_ij xi_i xi_j = 0 with
C_ij polynomials in P, and f, g are recovered from them:

    c f = sum A_i xi_i,     c^2 g = sum B_ij xi_i xi_j.

A k-point on the conic gives a k-parametrization theta of it, which agrees
with the xi of some model up to a GL2 change of variables and a scalar;
the scalar beta is read off the invariants of the candidate.  When c = 0
the same works with the tilde system, and the special strata have their
own explicit models.

Degree 2.  f and g are written in the two linear covariants V0, V1 with
invariant coefficients; replacing V0, V1 by any unimodular pair of linear
forms over k gives a model over k whenever r != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .conic import (DEFAULT_HEIGHT_BOUND, Conic, PointSearchResult,
                    has_rational_point, parametrize, tau_parametrize)
from .errors import (AutomorphismLocus, BetaNotInField, InvalidPoint,
                     OnBadLocus, PreconditionViolated, UnhandledLocus,
                     VerificationFailed)
from .field import Field, FieldElement, element_nth_roots, quadratic_field
from .forms import FormPair
from .inv2 import invariants2, reconstruction_data2
from .inv3 import (A_closed, B_closed, B_tilde_closed, C_closed,
                   C_tilde_closed, InvariantTuple3, c_tilde, invariants3,
                   pair_from_coeffs)
from .linalg import det, inverse
from .moduli import (ModuliPoint2, ModuliPoint3, Stratum, _bezout,
                     classify_aut, validate3, wp_equal)
from .poly import BinaryForm


@dataclass(frozen=True)
class DescentResult:
    """outcome: "model", "obstruction", "needs_extension" or "search_exhausted"."""

    outcome: str
    pair: Optional[FormPair] = None
    field: Optional[Field] = None
    conic: Optional[Conic] = None
    certificate: Optional[dict] = None
    D: Optional[int] = None
    bound: Optional[int] = None
    stratum: Optional[Stratum] = None
    route: Optional[str] = None
    diagnostic: Optional[str] = None


def _point3(P) -> ModuliPoint3:
    return P if isinstance(P, ModuliPoint3) else ModuliPoint3(P)


def _verified(pair: FormPair, P: ModuliPoint3) -> FormPair:
    got = ModuliPoint3(invariants3(pair))
    if got.is_zero() or not wp_equal(got, P):
        raise VerificationFailed(f"model has invariants {got}, expected {P}")
    return pair


def conic_CP(P) -> Conic:
    t = _point3(P).coords
    if not t.c:
        raise OnBadLocus("c = 0: the conic C_P is singular")
    return Conic(C_closed(t))


def conic_CP_tilde(P) -> Conic:
    t = _point3(P).coords
    if not c_tilde(t):
        raise OnBadLocus("c~ = 0: the tilde conic is singular")
    return Conic(C_tilde_closed(t))


def _combine(coeffs: Sequence, forms: Sequence[BinaryForm]) -> BinaryForm:
    out = BinaryForm.zero(forms[0].order, forms[0].field)
    for c, F in zip(coeffs, forms):
        if c:
            out = out + F * c
    return out


def _quadratic_combine(M, forms: Sequence[BinaryForm]) -> BinaryForm:
    n = 2 * forms[0].order
    out = BinaryForm.zero(n, forms[0].field)
    for p in range(3):
        for q in range(3):
            if M[p][q]:
                out = out + forms[p] * forms[q] * M[p][q]
    return out


def recover_beta(candidate: InvariantTuple3, target: InvariantTuple3,
                 weights: Sequence[int] = (2, 4, 6, 4, 6, 9)) -> list[FieldElement]:
    """All beta in the field with candidate_k = beta^w_k target_k.

    The exponents are those of (beta f, beta^2 g) on the six invariants.
    beta^g is obtained from a Bezout combination of the ratios, g being
    the gcd of the weights on the support, then a g-th root is taken.
    """
    support = [k for k, x in enumerate(target) if x]
    if support != [k for k, x in enumerate(candidate) if x]:
        raise VerificationFailed("candidate and target have different supports")
    ratios = [candidate[k] / target[k] for k in support]
    ws = [weights[k] for k in support]
    g, exps = _bezout(ws)
    beta_g = ratios[0] ** 0
    for q, e in zip(ratios, exps):
        beta_g = beta_g * q ** e
    return [b for b in element_nth_roots(beta_g, g)
            if all(b ** w == q for q, w in zip(ratios, ws))]


def _scale_model(f1: BinaryForm, g1: BinaryForm, P: ModuliPoint3) -> FormPair:
    cand = invariants3(FormPair(f1, g1))
    betas = recover_beta(cand, P.coords)
    if not betas:
        raise BetaNotInField("no scaling factor in the base field")
    for beta in betas:
        pair = FormPair(f1 / beta, g1 / (beta * beta))
        if invariants3(pair) == P.coords:
            return pair
    raise VerificationFailed("no scaling factor reproduces the point")


def reconstruct3_generic(P, pt: Sequence) -> FormPair:
    """Model over k from a k-point of C_P (requires c != 0)."""
    P = _point3(P)
    t = P.coords
    C = conic_CP(P)
    theta = parametrize(C, pt)
    f1 = _combine(A_closed(t), theta) / t.c
    g1 = _quadratic_combine(B_closed(t), theta) / (t.c * t.c)
    return _verified(_scale_model(f1, g1, P), P)


def tilde_change_matrix(t: InvariantTuple3):
    """L with xi~ = L u~ for the tilde system."""
    C = C_tilde_closed(t)
    z = t.d * 0
    return ((-C[1][1] / 2, C[0][1] / 2, z),
            (C[0][1] / 2, -C[0][0] / 2, z),
            (z, z, z - 1))


def tilde_point_from_conic_point(P, p: Sequence) -> list:
    """Map a point of the tilde C-conic to the conic satisfied by u~."""
    t = _point3(P).coords
    Linv = inverse([list(r) for r in tilde_change_matrix(t)])
    F = t.field
    p = [x if isinstance(x, FieldElement) else F(x) for x in p]
    return [sum((Linv[r][k] * p[k] for k in range(3)), F(0)) for r in range(3)]


def reconstruct3_tilde(P, tpt: Sequence) -> FormPair:
    """Model over k from a point t (t3 != 0) of the conic satisfied by u~."""
    P = _point3(P)
    t = P.coords
    ct = c_tilde(t)
    if not ct:
        raise PreconditionViolated("c~ must be nonzero")
    C = C_tilde_closed(t)
    tau = tau_parametrize((C[0][0], C[0][1], C[1][1]), tpt)
    F = tau[0].field
    t3 = tpt[2] if isinstance(tpt[2], FieldElement) else F(tpt[2])
    L = tilde_change_matrix(t)
    xi = [_combine(L[r], tau) for r in range(3)]
    Bt = B_tilde_closed(t)
    for beta in (2 * t3, -2 * t3):
        f = tau[0] / beta
        g = _quadratic_combine(Bt, xi) / (ct * ct * beta * beta)
        pair = FormPair(f, g)
        if invariants3(pair) == t:
            return pair
    raise VerificationFailed("neither sign of beta' reproduces the point")


def _avoid_zero(C: Conic, pt: Sequence, index: int) -> tuple:
    """A point of C with nonzero coordinate ``index``, starting from pt."""
    F = C.M[0][0].field
    pt = tuple(x if isinstance(x, FieldElement) else F(x) for x in pt)
    if pt[index]:
        return pt
    theta = parametrize(C, pt)
    for s in range(0, 50):
        for x0, x1 in ((1, s), (s, 1)):
            v = [th(x0, x1) for th in theta]
            if any(v) and v[index]:
                return tuple(v)
    raise UnhandledLocus("every point of the conic has that coordinate zero")


def _rescale_even(t: InvariantTuple3, alpha2) -> InvariantTuple3:
    """Coordinates times alpha^w using only alpha^2 (odd-weight slots zero)."""
    if t.j or t.a:
        raise PreconditionViolated("odd-weight coordinates must vanish")
    return InvariantTuple3(t.d * alpha2, t.i * alpha2, t.j, t.a,
                           t.b * alpha2 ** 2, t.c * alpha2 ** 3)


def _model(pair: FormPair, P: ModuliPoint3, stratum, route) -> DescentResult:
    pair = _verified(pair, P)
    return DescentResult("model", pair=pair, field=pair.field, stratum=stratum,
                         route=route)


A4_OBSTRUCTION = Conic.from_coefficients(1, 3, -2)


def reconstruct3_special(P, stratum: Stratum,
                         height_bound: int = DEFAULT_HEIGHT_BOUND) -> DescentResult:
    P = _point3(P)
    t = P.coords
    d, i, j, a, b, c = t
    ct = c_tilde(t)
    if stratum == Stratum.Trivial:
        raise PreconditionViolated("the trivial stratum has no special model")

    if stratum == Stratum.C2_2 and ct and d:
        lam = d
        t2 = _rescale_even(t, -2 * d)
        P2 = ModuliPoint3(t2)
        if not c:
            model = pair_from_coeffs([0, -2 * lam, 0, 0,
                                      (t2.d * t2.i / 3 + t2.b) / lam ** 3, 0, 2 * lam, 0])
            return _model(model, P, stratum, "C2_2 explicit model")
        C = conic_CP_tilde(P2)
        p = (0, lam, 1)
        if C(p):
            raise VerificationFailed("[0:lam:1] is not on the tilde conic")
        tpt = tilde_point_from_conic_point(P2, p)
        return _model(reconstruct3_tilde(P2, tpt), P, stratum, "C2_2 tilde")

    if stratum == Stratum.C3:
        if not a:
            return reconstruct3_special(P, Stratum.A4, height_bound)
        if not j:
            return _model(pair_from_coeffs([0, 0, 1, 1, 0, 0, 0, 0]), P, stratum,
                          "C3 with j = 0")
        c2 = c * c
        coeffs = [-j * j * a * a / (9 * c), -2 * j * a * a / (3 * c), -a * a / c,
                  (2 * j ** 4 * a ** 4 + 9 * j * j * a ** 3) / (81 * c2),
                  2 * j ** 3 * a ** 3 / (9 * c2), 2 * j * j * a ** 3 / (3 * c2),
                  2 * j * a ** 3 / (3 * c2), 0]
        return _model(pair_from_coeffs(coeffs), P, stratum, "C3 explicit model")

    if stratum in (Stratum.C2_1, Stratum.D4_1, Stratum.C2_2) and d:
        # c = c~ = 0 here
        C = Conic.from_coefficients(9 * d ** 3, 8 * d * d, -36 * d * d * i + 72 * a * a,
                                    yz=-24 * d * a)
        res = has_rational_point(C, height_bound)
        if res.outcome == "impossible":
            return DescentResult("obstruction", conic=C, certificate=res.certificate,
                                 stratum=stratum, route="C2_1 conic")
        if res.outcome != "point":
            return DescentResult("search_exhausted", conic=C, bound=height_bound,
                                 stratum=stratum, route="C2_1 conic",
                                 diagnostic=res.diagnostic)
        x, y, z = _avoid_zero(C, res.point, 2)
        c3 = d / 2
        c5, c6 = x / z, y / z
        c4 = 2 * a / (d * d) - c6 / (3 * d)
        model = pair_from_coeffs([1, 0, c3, c4, c5, c6, -c3 * c5, c3 * c3 * c4])
        return _model(model, P, stratum, "C2_1 conic")

    if stratum == Stratum.D4_2 and not d:
        if i and j:
            model = pair_from_coeffs([0, 0, 0, -27 * i ** 3, -27 * i ** 3, 0,
                                      24 * j * j, 0])
            return _model(model, P, stratum, "D4_2 explicit model")
        if not j:
            return reconstruct3_special(P, Stratum.D8, height_bound)
        return reconstruct3_special(P, Stratum.A4, height_bound)

    if stratum == Stratum.D8:
        return _model(pair_from_coeffs([0, 0, 0, 1, 0, 0, 0, 1]), P, stratum,
                      "D8 explicit model")

    if stratum == Stratum.A4:
        K = quadratic_field(-3)
        s = K.gen()
        model = pair_from_coeffs([0, 0, 0, 1, 0, 2 * s, 0, 1], K)
        _verified(model, P)
        res = has_rational_point(A4_OBSTRUCTION)
        return DescentResult("needs_extension", pair=model, field=K, D=-3,
                             conic=A4_OBSTRUCTION, certificate=res.certificate,
                             stratum=stratum, route="A4 model over Q(sqrt(-3))")

    if c or ct:
        return _conic_route(P, stratum, height_bound)
    raise UnhandledLocus(f"no construction for {P} on stratum {stratum.value}")


def _conic_route(P: ModuliPoint3, stratum: Stratum, height_bound: int) -> DescentResult:
    t = P.coords
    if t.c:
        C, route = conic_CP(P), "generic"
    else:
        C, route = conic_CP_tilde(P), "tilde"
    res = has_rational_point(C, height_bound)
    if res.outcome == "impossible":
        return DescentResult("obstruction", conic=C, certificate=res.certificate,
                             stratum=stratum, route=route)
    if res.outcome != "point":
        return DescentResult("search_exhausted", conic=C, bound=height_bound,
                             stratum=stratum, route=route, diagnostic=res.diagnostic)
    if route == "generic":
        pair = reconstruct3_generic(P, res.point)
    else:
        p = _avoid_zero(C, res.point, 2)
        pair = reconstruct3_tilde(P, tilde_point_from_conic_point(P, p))
    return _model(pair, P, stratum, route)


def descend3(P, height_bound: int = DEFAULT_HEIGHT_BOUND) -> DescentResult:
    """Decide whether P has a model over its field and build one if so."""
    P = _point3(P)
    status = validate3(P)
    if status != "ok":
        raise InvalidPoint(status)
    stratum = classify_aut(P)
    if stratum != Stratum.Trivial:
        return reconstruct3_special(P, stratum, height_bound)
    return _conic_route(P, stratum, height_bound)


# -- degree 2 --------------------------------------------------------------

def reconstruct2(P, W: Sequence[Sequence] = ((1, 0), (0, 1))) -> FormPair:
    """Model over k of a point of M2 with r != 0.

    W = [[p, q], [r, s]] gives the linear forms W0 = p X0 + q X1 and
    W1 = r X0 + s X1, which play the role of the covariants V0, V1.
    """
    P = P if isinstance(P, ModuliPoint2) else ModuliPoint2(P)
    t = P.coords
    if not t.r:
        raise AutomorphismLocus("r = 0: the map has nontrivial automorphisms")
    if det([list(row) for row in W]) != 1:
        raise PreconditionViolated("W must have determinant 1")
    F = t.field
    Wf = (BinaryForm(W[0], F), BinaryForm(W[1], F))
    data = reconstruction_data2(t)
    f = Wf[0] * data.b0 - Wf[1] * data.b1
    g = BinaryForm.zero(3, f.field)
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                coeff = data.a[i + j + k] * (-1) ** (i + j + k)
                if coeff:
                    g = g + Wf[(i + 1) % 2] * Wf[(j + 1) % 2] * Wf[(k + 1) % 2] * coeff
    # det[V0, V1] = -r with our transvectant normalization, hence the sign
    g = g * -9 / (2 * t.r)
    pair = FormPair(f, g)
    got = ModuliPoint2(invariants2(pair))
    if got.is_zero() or not wp_equal(got, P):
        raise VerificationFailed(f"model has invariants {got}, expected {P}")
    return pair
