"""Binary forms, sparse multivariate polynomials and transvectants."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import IndexTooLarge, OrderMismatch, UnknownVariablePair
from .field import QQ, Field, FieldElement, common_field


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _as_element(c, field: Field) -> FieldElement:
    if isinstance(c, FieldElement):
        return c.lift(field) if c.field is not field else c
    return FieldElement(c, 0, field)


class BinaryForm:
    """Homogeneous form sum c_i X0^(n-i) X1^i; ``coeffs[i]`` is c_i."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: Field | None = None):
        raw = list(coeffs)
        if not raw:
            raise ValueError("a form of order n needs n+1 coefficients")
        fields = [c.field for c in raw if isinstance(c, FieldElement)]
        F = common_field(*(fields + ([field] if field is not None else [])))
        self.coeffs = tuple(_as_element(c, F) for c in raw)
        self.field = F

    @classmethod
    def _raw(cls, coeffs: tuple, field: Field) -> "BinaryForm":
        out = object.__new__(cls)
        out.coeffs = coeffs
        out.field = field
        return out

    @classmethod
    def zero(cls, order: int, field: Field = QQ) -> "BinaryForm":
        z = field(0)
        return cls._raw((z,) * (order + 1), field)

    @classmethod
    def monomial(cls, order: int, i: int, c=1, field: Field = QQ) -> "BinaryForm":
        """c X0^(order-i) X1^i."""
        coeffs = [0] * (order + 1)
        coeffs[i] = c
        return cls(coeffs, field)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self, field: Field) -> "BinaryForm":
        if field is self.field:
            return self
        return BinaryForm._raw(tuple(c.lift(field) for c in self.coeffs), field)

    # -- ring operations ---------------------------------------------
    def _check(self, other: "BinaryForm") -> Field:
        if other.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        if other.field is self.field:
            return self.field
        return common_field(self.field, other.field)

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        F = self._check(other)
        return BinaryForm._raw(
            tuple((x + y).lift(F) for x, y in zip(self.coeffs, other.coeffs)), F)

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        F = self._check(other)
        return BinaryForm._raw(
            tuple((x - y).lift(F) for x, y in zip(self.coeffs, other.coeffs)), F)

    def __neg__(self):
        return BinaryForm._raw(tuple(-c for c in self.coeffs), self.field)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            F = common_field(self.field, other.field)
            out = [F(0)] * (self.order + other.order + 1)
            for i, x in enumerate(self.coeffs):
                if not x:
                    continue
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
            return BinaryForm._raw(tuple(c.lift(F) for c in out), F)
        if isinstance(other, (FieldElement, int, Fraction)):
            F = self.field if not isinstance(other, FieldElement) else \
                common_field(self.field, other.field)
            return BinaryForm._raw(tuple((c * other).lift(F) for c in self.coeffs), F)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            inv = (other if isinstance(other, FieldElement) else self.field(other)).inverse()
            return self * inv
        return NotImplemented

    def __pow__(self, n: int) -> "BinaryForm":
        out = BinaryForm([1], self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"BinaryForm([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        n = self.order
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                s for s in (_pw("X0", n - i), _pw("X1", i)) if s)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    # -- calculus -----------------------------------------------------
    def __call__(self, x0, x1):
        """Evaluate at (x0, x1)."""
        n = self.order
        total = self.field(0)
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * (x0 ** (n - i)) * (x1 ** i)
        return total

    def derivative(self, p: int, q: int) -> "BinaryForm":
        """d^p/dX0^p d^q/dX1^q; the zero form of order 0 if p+q > order."""
        n = self.order
        if p + q > n:
            return BinaryForm.zero(0, self.field)
        out = []
        for i in range(q, n - p + 1):
            c = self.coeffs[i]
            out.append(c * (_falling(n - i, p) * _falling(i, q)) if c else c)
        return BinaryForm._raw(tuple(out), self.field)


def _pw(name: str, e: int) -> str:
    return "" if e == 0 else name if e == 1 else f"{name}^{e}"


X0 = BinaryForm([1, 0])
X1 = BinaryForm([0, 1])


def transvect(F: BinaryForm, G: BinaryForm, r: int) -> BinaryForm:
    """The r-th transvectant (F, G)_r with the factorial normalization.

    Computed from mixed partial derivatives; ``gen_transvect`` runs the
    same bracket through the omega process and serves as a cross-check.
    """
    m, n = F.order, G.order
    if r < 0 or r > m or r > n:
        raise IndexTooLarge(f"r = {r} with orders {m}, {n}")
    field = common_field(F.field, G.field)
    total = BinaryForm.zero(m + n - 2 * r, field)
    for k in range(r + 1):
        term = F.derivative(r - k, k) * G.derivative(k, r - k)
        w = comb(r, k) * (-1) ** k
        total = total + term * w
    norm = Fraction(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n))
    return total * norm


def substitute(F: BinaryForm, M: Sequence[Sequence]) -> BinaryForm:
    """F(p X0 + q X1, r X0 + s X1) for M = [[p, q], [r, s]]."""
    (p, q), (r, s) = M
    field = common_field(F.field, *(x.field for x in (p, q, r, s)
                                    if isinstance(x, FieldElement)))
    L0 = BinaryForm([p, q], field)
    L1 = BinaryForm([r, s], field)
    n = F.order
    pow0 = [BinaryForm([1], field)]
    pow1 = [BinaryForm([1], field)]
    for _ in range(n):
        pow0.append(pow0[-1] * L0)
        pow1.append(pow1[-1] * L1)
    total = BinaryForm.zero(n, field)
    for i, c in enumerate(F.coeffs):
        if c:
            total = total + (pow0[n - i] * pow1[i]) * c
    return total


# -- sparse multivariate polynomials --------------------------------------

def z_names(index: int) -> tuple[str, str]:
    """Variable names for the index-th copy of (X0, X1)."""
    return (f"Z0_{index}", f"Z1_{index}")


class MultiPoly:
    """Sparse polynomial: exponent tuple -> nonzero FieldElement."""

    __slots__ = ("variables", "terms", "field")

    def __init__(self, variables: Sequence[str], terms: dict | None = None,
                 field: Field = QQ):
        self.variables = tuple(variables)
        self.field = field
        self.terms: dict[tuple, FieldElement] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.variables):
                raise ValueError("exponent arity does not match variables")
            c = _as_element(c, field) if not isinstance(c, FieldElement) else c
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, variables, terms, field) -> "MultiPoly":
        out = object.__new__(cls)
        out.variables = variables
        out.terms = terms
        out.field = field
        return out

    @classmethod
    def from_form(cls, F: BinaryForm, variables: Sequence[str],
                  pair: tuple[str, str]) -> "MultiPoly":
        """Embed F, written in the variables named by ``pair``."""
        variables = tuple(variables)
        i0, i1 = variables.index(pair[0]), variables.index(pair[1])
        n = F.order
        terms = {}
        for k, c in enumerate(F.coeffs):
            if c:
                e = [0] * len(variables)
                e[i0] += n - k
                e[i1] += k
                terms[tuple(e)] = c
        return cls._raw(variables, terms, F.field)

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "MultiPoly") -> Field:
        if other.variables != self.variables:
            raise ValueError("variable lists differ")
        return common_field(self.field, other.field)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        F = self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out, F)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables,
                              {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            F = self._same(other)
            out: dict[tuple, FieldElement] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = out.get(e)
                    out[e] = c1 * c2 if v is None else v + c1 * c2
            return MultiPoly._raw(self.variables,
                                  {e: c for e, c in out.items() if c}, F)
        if isinstance(other, (FieldElement, int, Fraction)):
            if not other:
                return MultiPoly._raw(self.variables, {}, self.field)
            return MultiPoly._raw(self.variables,
                                  {e: c * other for e, c in self.terms.items()},
                                  self.field)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {len(self.terms)} terms)"

    def diff(self, var: int, k: int = 1) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[var] < k:
                continue
            f = list(e)
            f[var] -= k
            out[tuple(f)] = c * _falling(e[var], k)
        return MultiPoly._raw(self.variables, out, self.field)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariablePair(f"no variable {name!r}") from None

    def omega(self, a: int, b: int) -> "MultiPoly":
        """Omega_ab = d^2/dZ0_a dZ1_b - d^2/dZ0_b dZ1_a."""
        if a == b:
            raise UnknownVariablePair("omega needs two distinct copies")
        (a0, a1), (b0, b1) = z_names(a), z_names(b)
        try:
            ia0, ia1 = self._index(a0), self._index(a1)
            ib0, ib1 = self._index(b0), self._index(b1)
        except UnknownVariablePair:
            raise UnknownVariablePair(f"pair ({a}, {b}) not declared") from None
        out: dict[tuple, FieldElement] = {}
        for e, c in self.terms.items():
            for i0, i1, sign in ((ia0, ib1, 1), (ib0, ia1, -1)):
                if e[i0] == 0 or e[i1] == 0:
                    continue
                f = list(e)
                w = f[i0] * f[i1] * sign
                f[i0] -= 1
                f[i1] -= 1
                f = tuple(f)
                v = out.get(f)
                out[f] = c * w if v is None else v + c * w
        return MultiPoly._raw(self.variables,
                              {e: c for e, c in out.items() if c}, self.field)

    def collapse(self, pairs: Sequence[tuple[str, str]]) -> BinaryForm:
        """Identify every listed variable pair with (X0, X1)."""
        idx = [(self._index(p0), self._index(p1)) for p0, p1 in pairs]
        listed = {i for pr in idx for i in pr}
        degrees = set()
        coll: dict[tuple[int, int], FieldElement] = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(len(e)) if i not in listed):
                raise ValueError("polynomial involves unlisted variables")
            d0 = sum(e[i0] for i0, _ in idx)
            d1 = sum(e[i1] for _, i1 in idx)
            degrees.add(d0 + d1)
            key = (d0, d1)
            coll[key] = coll[key] + c if key in coll else c
        if len(degrees) > 1:
            raise ValueError("collapsed polynomial is not homogeneous")
        n = degrees.pop() if degrees else 0
        coeffs = [self.field(0)] * (n + 1)
        for (d0, d1), c in coll.items():
            coeffs[d1] = c
        return BinaryForm(coeffs, self.field)


def gen_transvect(forms: Sequence[BinaryForm],
                  pairs: Sequence[tuple[int, int, int]]) -> BinaryForm:
    """Generalized transvectant of ``forms``.

    ``pairs`` lists (p, q, r) with 0-based form indices: Omega_pq is
    applied r times to the product of the forms written in separate
    variable copies, the copies are identified with (X0, X1) and the
    result is scaled by prod (s - kappa)!/s! with s the order of each form
    and kappa the number of omega factors touching it.
    """
    m = len(forms)
    orders = [F.order for F in forms]
    kappa = [0] * m
    for p, q, r in pairs:
        if not (0 <= p < m and 0 <= q < m) or p == q:
            raise UnknownVariablePair(f"bad pair ({p}, {q})")
        kappa[p] += r
        kappa[q] += r
    for s, k in zip(orders, kappa):
        if k > s:
            raise IndexTooLarge(f"kappa {k} exceeds order {s}")
    names = [z_names(l) for l in range(m)]
    variables = tuple(v for pr in names for v in pr)
    field = common_field(*(F.field for F in forms))
    prod = MultiPoly._raw(variables, {(0,) * len(variables): field(1)}, field)
    for l, F in enumerate(forms):
        prod = prod * MultiPoly.from_form(F.lift(field), variables, names[l])
    for p, q, r in pairs:
        for _ in range(r):
            prod = prod.omega(p, q)
    pref = Fraction(1)
    for s, k in zip(orders, kappa):
        pref *= Fraction(factorial(s - k), factorial(s))
    n = sum(orders) - 2 * sum(r for _, _, r in pairs)
    if prod.is_zero():
        return BinaryForm.zero(n, field)
    return prod.collapse(names) * pref
