"""Exact scalars in Q and in quadratic extensions Q(sqrt(D))."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational
from typing import Optional, Union

from .errors import DivisionByZero, FieldMismatch, ParseError


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


class Field:
    """Field descriptor: Q when ``D`` is None, otherwise Q(sqrt(D)).

    Instances are interned, so ``is`` comparison is reliable.  Use
    :data:`QQ` and :func:`quadratic_field` rather than the constructor.
    """

    __slots__ = ("D",)

    def __init__(self, D: Optional[int]):
        self.D = D

    @property
    def is_rational(self) -> bool:
        return self.D is None

    def __repr__(self) -> str:
        return "QQ" if self.D is None else f"QQ(sqrt({self.D}))"

    def __reduce__(self):
        return (_field_for, (self.D,))

    def to_json(self) -> dict:
        if self.D is None:
            return {"kind": "Rationals"}
        return {"kind": "QuadExt", "D": self.D}

    @staticmethod
    def from_json(obj: dict) -> "Field":
        kind = obj.get("kind")
        if kind == "Rationals":
            return QQ
        if kind == "QuadExt":
            return quadratic_field(int(obj["D"]))
        raise ParseError(f"unknown field kind {kind!r}")

    def __call__(self, a=0, b=0) -> "FieldElement":
        return FieldElement(a, b, self)

    def gen(self) -> "FieldElement":
        if self.D is None:
            raise ValueError("Q has no quadratic generator")
        return FieldElement(0, 1, self)


@lru_cache(maxsize=None)
def _field_for(D: Optional[int]) -> Field:
    return Field(D)


QQ = _field_for(None)


def quadratic_field(D: int) -> Field:
    if D in (0, 1) or not is_squarefree(D):
        raise ValueError(f"D = {D} must be squarefree and different from 0, 1")
    return _field_for(int(D))


def common_field(*fields: Field) -> Field:
    """Smallest supported field containing all of ``fields``.

    Q embeds into every extension; two different extensions do not mix.
    """
    out = QQ
    for F in fields:
        if F.D is None or F is out:
            continue
        if out.D is not None:
            raise FieldMismatch(f"{out!r} vs {F!r}")
        out = F
    return out


Scalar = Union["FieldElement", int, Fraction]


def _new(a: Fraction, b: Fraction, field: Field) -> "FieldElement":
    x = object.__new__(FieldElement)
    x.a = a
    x.b = b
    x.field = field
    return x


class FieldElement:
    """a + b*sqrt(D), immutable, with Fraction coordinates."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a=0, b=0, field: Field = QQ):
        if isinstance(a, FieldElement):
            if b:
                raise TypeError("cannot combine a FieldElement with a b-part")
            field = common_field(field, a.field)
            a, b = a.a, a.b
        a = Fraction(a)
        b = Fraction(b)
        if field.D is None and b:
            raise FieldMismatch("nonzero sqrt-part in Q")
        self.a = a
        self.b = b
        self.field = field

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            F = common_field(self.field, other.field)
            return _new(other.a, other.b, F)
        if isinstance(other, (int, Rational)):
            return _new(Fraction(other), Fraction(0), self.field)
        return None

    def lift(self, field: Field) -> "FieldElement":
        """Embed into ``field`` (Q embeds everywhere)."""
        if field is self.field:
            return self
        if self.field.D is not None:
            raise FieldMismatch(f"cannot move {self.field!r} into {field!r}")
        return _new(self.a, self.b, field)

    def _join(self, o: "FieldElement") -> Field:
        if o.field is self.field:
            return self.field
        return common_field(self.field, o.field)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.a + o.a, self.b + o.b, self._join(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.a - o.a, self.b - o.b, self._join(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return _new(-self.a, -self.b, self.field)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self._join(o)
        if F.D is None:
            return _new(self.a * o.a, Fraction(0), F)
        if not o.b:
            return _new(self.a * o.a, self.b * o.a, F)
        if not self.b:
            return _new(self.a * o.a, self.a * o.b, F)
        return _new(self.a * o.a + F.D * self.b * o.b,
                    self.a * o.b + self.b * o.a, F)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        return _new(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        if self.field.D is None:
            return self.a * self.a
        return self.a * self.a - self.field.D * self.b * self.b

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero("inverse of zero")
        if not self.b:
            return _new(1 / self.a, Fraction(0), self.field)
        n = self.norm()
        return _new(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = _new(Fraction(1), Fraction(0), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- predicates ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def to_fraction(self) -> Fraction:
        if self.b:
            raise FieldMismatch(f"{self} is not rational")
        return self.a

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.field.D))

    # -- text ---------------------------------------------------------
    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({format_element(self)!r}, {self.field!r})"


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(x: FieldElement) -> str:
    """Canonical text: "p/q" or "p/q+r/s*sqrt(D)"."""
    if not x.b:
        return _fmt_fraction(x.a)
    root = f"sqrt({x.field.D})"
    if x.b == 1:
        tail = root
    elif x.b == -1:
        tail = "-" + root
    else:
        tail = f"{_fmt_fraction(x.b)}*{root}"
    if not x.a:
        return tail
    sign = "" if tail.startswith("-") else "+"
    return f"{_fmt_fraction(x.a)}{sign}{tail}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_PURE = re.compile(rf"^(?P<a>{_RAT})$")
_MIXED = re.compile(
    rf"^(?:(?P<a>{_RAT})(?=[+-]))?(?P<b>[+-]?(?:\d+(?:/\d+)?\*)?)sqrt\((?P<D>[+-]?\d+)\)$"
)


def parse_element(text: str, field: Field = QQ) -> FieldElement:
    """Inverse of :func:`format_element`; also accepts "i" for sqrt(-1)."""
    s = str(text).replace(" ", "")
    if re.search(r"/0+(?!\d)", s):
        raise ParseError(f"zero denominator in {text!r}")
    if field.D == -1:
        s = re.sub(r"(?<![a-z])i(?![a-z])", "sqrt(-1)", s)
        s = re.sub(r"(\d)sqrt", r"\1*sqrt", s)
    m = _PURE.match(s)
    if m:
        return FieldElement(Fraction(m.group("a")), 0, field)
    m = _MIXED.match(s)
    if m is None:
        raise ParseError(f"cannot parse field element {text!r}")
    D = int(m.group("D"))
    if field.D != D:
        raise FieldMismatch(f"element {text!r} does not live in {field!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    bs = m.group("b").rstrip("*")
    b = Fraction(-1) if bs == "-" else Fraction(1) if bs in ("", "+") else Fraction(bs)
    return FieldElement(a, b, field)


def rational_square_root(q) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q``, or None."""
    return rational_nth_root(q, 2)


def _int_nth_root(n: int, k: int) -> Optional[int]:
    if k == 1:
        return n
    if k == 2:
        r = isqrt(n)
        return r if r * r == n else None
    r = _int_root_newton(n, k)
    return r if r**k == n else None


def _int_root_newton(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rational_nth_root(q, n: int) -> Optional[Fraction]:
    """r in Q with r**n == q (nonnegative for even n), or None."""
    if n < 1:
        raise ValueError("n must be positive")
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign, q = -1, -q
    num = _int_nth_root(q.numerator, n)
    if num is None:
        return None
    den = _int_nth_root(q.denominator, n)
    if den is None:
        return None
    return sign * Fraction(num, den)


def element_nth_roots(x: FieldElement, n: int) -> list[FieldElement]:
    """All n-th roots of ``x`` that lie in its field.

    Over Q this is the rational root(s); over Q(sqrt(D)) only roots of a
    rational x or of a pure multiple of sqrt(D) by a rational square are
    found, which is all the descent code asks for.
    """
    F = x.field
    out: list[FieldElement] = []
    if not x:
        return [F(0)]
    if x.is_rational():
        r = rational_nth_root(x.a, n)
        if r is not None:
            out.append(F(r))
            if n % 2 == 0 and r:
                out.append(F(-r))
        if F.D is not None:
            # roots of the form s*sqrt(D)
            t = x.a / Fraction(F.D) ** (n // 2) if n % 2 == 0 else None
            if t is not None:
                s = rational_nth_root(t, n)
                if s is not None and s:
                    out.extend([F(0, s), F(0, -s)])
    if F.D is not None and not out and n == 2:
        # general square root in Q(sqrt(D)) via the norm
        nr = rational_square_root(x.norm())
        if nr is not None:
            for sgn in (1, -1):
                u = rational_square_root((x.a + sgn * nr) / 2)
                if u:
                    y = F(u, x.b / (2 * u))
                    if y * y == x:
                        out.extend([y, -y])
                        break
    return [y for y in out if y**n == x]
