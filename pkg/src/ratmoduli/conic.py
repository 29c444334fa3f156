"""Plane conics over Q: diagonalization, rational points, parametrization.

Rational points are decided by Legendre's theorem on the reduced diagonal
form A x^2 + B y^2 + C z^2 (squarefree, pairwise coprime coefficients) and
produced by lattice reduction: every solution lies in a sublattice of
index |ABC| cut out by square roots of -BC, -AC, -AB modulo |A|, |B|, |C|,
and a reduced basis of that lattice contains a solution or a short
combination of one.  A bounded enumeration is kept as a last resort.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .errors import PointNotOnConic, PreconditionViolated, SingularConic
from .field import QQ, Field, FieldElement, common_field
from .linalg import det
from .poly import BinaryForm

DEFAULT_HEIGHT_BOUND = 10 ** 4


class Conic:
    """The ternary quadratic form x^T M x with M symmetric."""

    __slots__ = ("M", "field")

    def __init__(self, M: Sequence[Sequence]):
        fields = [x.field for row in M for x in row if isinstance(x, FieldElement)]
        F = common_field(*fields)
        rows = tuple(tuple(x.lift(F) if isinstance(x, FieldElement) else F(x)
                           for x in row) for row in M)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a conic needs a 3x3 matrix")
        for p in range(3):
            for q in range(p):
                if rows[p][q] != rows[q][p]:
                    raise ValueError("matrix is not symmetric")
        self.M = rows
        self.field = F

    @classmethod
    def from_coefficients(cls, xx, yy, zz, xy=0, xz=0, yz=0) -> "Conic":
        """xx X^2 + yy Y^2 + zz Z^2 + xy XY + xz XZ + yz YZ."""
        F = common_field(*(v.field for v in (xx, yy, zz, xy, xz, yz)
                           if isinstance(v, FieldElement)))
        h = lambda v: (v if isinstance(v, FieldElement) else F(v)) / 2
        return cls([[xx, h(xy), h(xz)], [h(xy), yy, h(yz)], [h(xz), h(yz), zz]])

    def __call__(self, v: Sequence):
        return sum((self.M[p][q] * v[p] * v[q] for p in range(3) for q in range(3)),
                   self.field(0))

    def bilinear(self, u: Sequence, v: Sequence):
        return sum((self.M[p][q] * u[p] * v[q] for p in range(3) for q in range(3)),
                   self.field(0))

    def rational_matrix(self) -> list[list[Fraction]]:
        return [[x.to_fraction() for x in row] for row in self.M]

    def coefficients(self) -> dict[str, FieldElement]:
        """Monomial coefficients of the form."""
        M = self.M
        return {"x1^2": M[0][0], "x2^2": M[1][1], "x3^2": M[2][2],
                "x1*x2": 2 * M[0][1], "x1*x3": 2 * M[0][2], "x2*x3": 2 * M[1][2]}

    def rank(self) -> int:
        return _rank([list(r) for r in self.M])

    def __eq__(self, other) -> bool:
        return isinstance(other, Conic) and self.M == other.M

    def __repr__(self) -> str:
        parts = [f"({v})*{k}" for k, v in self.coefficients().items() if v]
        return "Conic(" + (" + ".join(parts) or "0") + ")"


def _rank(A: list[list]) -> int:
    A = [row[:] for row in A]
    rank = 0
    for c in range(len(A[0])):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                t = A[r][c] / A[rank][c]
                A[r] = [x - t * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def _kernel_vector(A: list[list[Fraction]]) -> Optional[list[Fraction]]:
    """A nonzero vector v with A v = 0, or None."""
    n = len(A[0])
    R = [row[:] for row in A]
    pivots = []
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, len(R)) if R[r][c]), None)
        if piv is None:
            continue
        R[rank], R[piv] = R[piv], R[rank]
        p = R[rank][c]
        R[rank] = [x / p for x in R[rank]]
        for r in range(len(R)):
            if r != rank and R[r][c]:
                t = R[r][c]
                R[r] = [x - t * y for x, y in zip(R[r], R[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    v = [Fraction(0)] * n
    v[free[0]] = Fraction(1)
    for r, c in enumerate(pivots):
        v[c] = -R[r][free[0]]
    return v


def diagonalize(C: Conic):
    """(diag, T) with T invertible and T^T M T = diag(diag)."""
    M = [list(r) for r in C.M]
    F = C.field
    T = [[F(1) if p == q else F(0) for q in range(3)] for p in range(3)]

    def add_col(dst: int, src: int, t):
        # x_dst <- x_dst + t x_src applied as a congruence
        for k in range(3):
            T[k][dst] = T[k][dst] + t * T[k][src]
        for k in range(3):
            M[k][dst] = M[k][dst] + t * M[k][src]
        for k in range(3):
            M[dst][k] = M[dst][k] + t * M[src][k]

    def swap(p: int, q: int):
        for row in T:
            row[p], row[q] = row[q], row[p]
        M[p], M[q] = M[q], M[p]
        for row in M:
            row[p], row[q] = row[q], row[p]

    for k in range(3):
        if not M[k][k]:
            j = next((j for j in range(k + 1, 3) if M[j][j]), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, 3) if M[k][j]), None)
                if j is None:
                    continue
                add_col(k, j, F(1))
        for j in range(k + 1, 3):
            if M[k][j]:
                add_col(j, k, -M[k][j] / M[k][k])
    return [M[k][k] for k in range(3)], T


# -- point search ---------------------------------------------------------

@dataclass(frozen=True)
class PointSearchResult:
    """outcome is "point", "impossible" or "exhausted"."""

    outcome: str
    point: Optional[tuple] = None
    certificate: Optional[dict] = None
    bound: Optional[int] = None
    diagnostic: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.outcome == "point"


def _primitive(v: Sequence[Fraction]) -> tuple[int, int, int]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass
class _Reduced:
    """A x^2 + B y^2 + C z^2 with x_orig_diag_k = scale_k * y_k."""

    coeffs: list[int]
    scale: list[Fraction]
    factors: list[dict] = dc_field(default_factory=list)


def _reduce_diagonal(diag: Sequence[Fraction]) -> _Reduced:
    """Squarefree, pairwise coprime integer form equivalent to diag."""
    den = 1
    for q in diag:
        den = den * q.denominator // gcd(den, q.denominator)
    scale = [Fraction(1)] * 3
    ints = [int(q * den) for q in diag]
    g = gcd(gcd(ints[0], ints[1]), ints[2])
    ints = [x // g for x in ints]
    signs = [1 if x > 0 else -1 for x in ints]
    facs = [{int(p): int(e) for p, e in factorint(abs(x)).items()} for x in ints]
    # strip squares: e p^(2m) x^2 = e (p^m x)^2
    for k in range(3):
        for p, e in list(facs[k].items()):
            if e >= 2:
                scale[k] /= p ** (e // 2)
                e %= 2
            if e:
                facs[k][p] = e
            else:
                del facs[k][p]
    # make pairwise coprime
    while True:
        shared = None
        for k, l in ((0, 1), (0, 2), (1, 2)):
            common = set(facs[k]) & set(facs[l])
            if common:
                shared = (k, l, min(common))
                break
        if shared is None:
            break
        k, l, p = shared
        m = 3 - k - l
        if p in facs[m]:
            for n in range(3):
                del facs[n][p]
            continue
        # multiply by p: p A x^2 = (A/p)(p x)^2, likewise for l
        del facs[k][p]
        del facs[l][p]
        facs[m][p] = 1
        scale[k] /= p
        scale[l] /= p
    coeffs = []
    for k in range(3):
        v = signs[k]
        for p in facs[k]:
            v *= p
        coeffs.append(v)
    return _Reduced(coeffs, scale, facs)


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _local_obstruction(red: _Reduced) -> Optional[dict]:
    """A failing place for the reduced form, or None if locally soluble."""
    A, B, C = red.coeffs
    if (A > 0) == (B > 0) == (C > 0):
        return {"kind": "real-definite",
                "signs": "positive" if A > 0 else "negative"}
    coeffs = red.coeffs
    for k in range(3):
        others = [coeffs[n] for n in range(3) if n != k]
        target = -others[0] * others[1]
        for p in sorted(red.factors[k]):
            if p == 2:
                continue
            if _legendre(target, p) == -1:
                return {"kind": "p-adic", "prime": p, "residue": target % p,
                        "modulus": p * p, "form": list(coeffs)}
    return None


def verify_local_certificate(coeffs: Sequence[int], p: int, k: int = 2,
                             limit: int = 2 * 10 ** 6) -> Optional[bool]:
    """Exhaustively confirm that A x^2 + B y^2 + C z^2 has no primitive zero
    modulo p^k.  Returns None when the search space exceeds ``limit``."""
    n = p ** k
    if n ** 3 > limit:
        return None
    A, B, C = coeffs
    sq = [(x * x) % n for x in range(n)]
    for x in range(n):
        ax = A * sq[x]
        for y in range(n):
            axy = ax + B * sq[y]
            for z in range(n):
                if (axy + C * sq[z]) % n == 0 and (x % p or y % p or z % p):
                    return False
    return True


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """x = r1 mod m1, x = r2 mod m2 with coprime moduli."""
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def _sqrt_mod(a: int, n: int) -> int:
    n = abs(n)
    if n == 1:
        return 0
    r = sqrt_mod(a % n, n)
    if r is None:
        raise ArithmeticError("no square root")
    return int(r)


def _lll(basis: list[list[int]], weights: Sequence[int]) -> list[list[int]]:
    """LLL reduction (delta = 3/4) for sum w_k x_k^2 with w_k > 0."""
    def ip(u, v):
        return sum(w * a * b for w, a, b in zip(weights, u, v))

    b = [list(v) for v in basis]
    n = len(b)

    def gso():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(ip(b[i], bs[j])) / ip(bs[j], bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if ip(bs[k], bs[k]) >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * ip(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def _lattice_solution(A: int, B: int, C: int) -> Optional[tuple[int, int, int]]:
    """Nontrivial zero of A x^2 + B y^2 + C z^2 (reduced, locally soluble)."""
    mA, mB, mC = abs(A), abs(B), abs(C)
    # y = tA z (mod A), x = tB z (mod B), x = tC y (mod C)
    tA = (_sqrt_mod(-C * pow(B, -1, mA), mA) if mA > 1 else 0)
    tB = (_sqrt_mod(-C * pow(A, -1, mB), mB) if mB > 1 else 0)
    tC = (_sqrt_mod(-B * pow(A, -1, mC), mC) if mC > 1 else 0)
    x1 = _crt(tB, mB, tC * tA, mC)
    x2 = _crt(0, mB, tC * mA, mC)
    basis = [[x1, tA, 1], [x2, mA, 0], [mB * mC, 0, 0]]
    red = _lll(basis, (mA, mB, mC))

    def Q(v):
        return A * v[0] ** 2 + B * v[1] ** 2 + C * v[2] ** 2

    for rng in (1, 2, 3):
        combos = sorted(itertools.product(range(-rng, rng + 1), repeat=3),
                        key=lambda k: sum(abs(x) for x in k))
        for ks in combos:
            if not any(ks):
                continue
            v = [sum(k * bv[i] for k, bv in zip(ks, red)) for i in range(3)]
            if any(v) and Q(v) == 0:
                return tuple(v)
    return None


def _enumerate(A: int, B: int, C: int, bound: int) -> Optional[tuple[int, int, int]]:
    """First zero in order of height max(|y|, |z|) <= bound."""
    for h in range(0, bound + 1):
        for y in range(-h, h + 1):
            for z in ((-h, h) if abs(y) != h else range(-h, h + 1)):
                if gcd(y, z) != 1 and not (h == 0):
                    continue
                num = -(B * y * y + C * z * z)
                if num % A:
                    continue
                s = num // A
                if s < 0:
                    continue
                x = isqrt(s)
                if x * x == s and (x or y or z):
                    return (x, y, z)
    return None


def has_rational_point(C: Conic, height_bound: int = DEFAULT_HEIGHT_BOUND) -> PointSearchResult:
    """Decide whether C has a rational point and produce one if so."""
    if C.field is not QQ and any(x.b for row in C.M for x in row):
        return PointSearchResult("exhausted", bound=height_bound,
                                 diagnostic="conics over quadratic fields are not decided")
    M = C.rational_matrix()
    r = _rank(M)
    if r == 0:
        return PointSearchResult("point", point=(1, 0, 0))
    if r < 3:
        v = _kernel_vector(M)
        return PointSearchResult("point", point=_primitive(v))
    diag, T = diagonalize(C)
    diag = [x.to_fraction() for x in diag]
    Tq = [[x.to_fraction() for x in row] for row in T]
    red = _reduce_diagonal(diag)
    obstruction = _local_obstruction(red)
    if obstruction is not None:
        if obstruction["kind"] == "p-adic":
            obstruction["verified_exhaustively"] = verify_local_certificate(
                red.coeffs, obstruction["prime"])
        else:
            obstruction["diagonal"] = [str(q) for q in diag]
        return PointSearchResult("impossible", certificate=obstruction)
    A, B, Cc = red.coeffs
    sol = _lattice_solution(A, B, Cc)
    if sol is None:
        sol = _enumerate(A, B, Cc, height_bound)
    if sol is None:
        return PointSearchResult("exhausted", bound=height_bound,
                                 diagnostic="locally soluble but no zero found")
    y = [red.scale[k] * sol[k] for k in range(3)]
    v = [sum(Tq[p][q] * y[q] for q in range(3)) for p in range(3)]
    pt = _primitive(v)
    if C(pt):
        raise AssertionError("point search produced a non-point")
    return PointSearchResult("point", point=pt)


# -- parametrizations -----------------------------------------------------

def _pencil(conic: Conic, p: Sequence, q: Sequence, s: Sequence) -> tuple:
    """Q(v) p - 2 B(p, v) v with v = X0 q + X1 s, as three quadratics."""
    F = conic.field
    M = conic.M

    def bil(u, w):
        return sum((M[a][b] * u[a] * w[b] for a in range(3) for b in range(3)), F(0))

    Qv = BinaryForm([bil(q, q), 2 * bil(q, s), bil(s, s)], F)
    Bp = BinaryForm([bil(p, q), bil(p, s)], F)
    out = []
    for k in range(3):
        v_k = BinaryForm([q[k], s[k]], F)
        out.append(Qv * p[k] - Bp * v_k * 2)
    return tuple(out)


def parametrize(C: Conic, p: Sequence) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
    """Line-pencil parametrization of a nonsingular conic through p."""
    if C.rank() < 3:
        raise SingularConic("parametrize needs a nonsingular conic")
    F = C.field
    p = [x if isinstance(x, FieldElement) else F(x) for x in p]
    if not any(p) or C(p):
        raise PointNotOnConic(f"{[str(x) for x in p]} is not on the conic")
    k = next(n for n in range(3) if p[n])
    basis = [[F(int(n == m)) for n in range(3)] for m in range(3) if m != k]
    return _pencil(C, p, basis[0], basis[1])


def tilde_conic(C11, C12, C22) -> Conic:
    """C22 x1^2 - 2 C12 x1 x2 + C11 x2^2 + 2 x3^2."""
    z = C11 * 0
    return Conic([[C22, -C12, z], [-C12, C11, z], [z, z, z + 2]])


def tau_parametrize(Ct: Sequence, t: Sequence) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
    """Parametrization of the tilde conic through t along v = (X0, X1, 0).

    For the quadratics tau returned here (tau_i, tau_j)_2 = 4 t3^2 C_ij,
    which is what recovers the scaling factor up to sign.
    """
    C11, C12, C22 = Ct
    D = tilde_conic(C11, C12, C22)
    F = D.field
    t = [x if isinstance(x, FieldElement) else F(x) for x in t]
    if D(t):
        raise PreconditionViolated("t is not on the tilde conic")
    if not t[2]:
        raise PreconditionViolated("t3 must be nonzero")
    one, zero = F(1), F(0)
    return _pencil(D, t, [one, zero, zero], [zero, one, zero])
