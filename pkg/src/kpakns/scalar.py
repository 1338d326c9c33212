"""Exact scalars: rationals and the cyclotomic field Q(z), z^2 + z + 1 = 0.

Rationals are plain :class:`fractions.Fraction` values (ints are accepted
wherever a rational is expected).  :class:`CycScalar` holds ``a + b*z`` with
rational ``a`` and ``b``; the reduction ``z^2 = -1 - z`` is applied on every
product, so two values are equal exactly when their components are.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class ScalarError(ArithmeticError):
    pass


class ScalarDivisionByZero(ScalarError, ZeroDivisionError):
    pass


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class CycScalar:
    """Element ``a + b*z`` of Q(z) with z a primitive cube root of unity."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _rat(a))
        object.__setattr__(self, "b", _rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, CycScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return cyc_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return cyc_mul(self, cyc_inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return cyc_mul(o, cyc_inv(self))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - a*b + b^2; zero only for the zero element."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "CycScalar":
        # z -> z^2 = -1 - z
        return CycScalar(self.a - self.b, -self.b)

    def __repr__(self):
        return f"CycScalar({self.a}, {self.b})"

    def __str__(self):
        return format_scalar(self)


ZETA = CycScalar(0, 1)


def cyc_mul(x: CycScalar, y: CycScalar) -> CycScalar:
    a1, b1, a2, b2 = x.a, x.b, y.a, y.b
    return CycScalar(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1 - b1 * b2)


def cyc_inv(x: CycScalar) -> CycScalar:
    n = x.norm()
    if n == 0:
        raise ScalarDivisionByZero("zero has no inverse in Q(z)")
    c = x.conjugate()
    return CycScalar(c.a / n, c.b / n)


def as_cyc(x) -> CycScalar:
    c = CycScalar._coerce(x)
    if c is None:
        raise TypeError(f"not a scalar: {x!r}")
    return c


def inverse(x):
    """Multiplicative inverse of a rational or Q(z) scalar."""
    if isinstance(x, CycScalar):
        return cyc_inv(x)
    if x == 0:
        raise ScalarDivisionByZero("division by zero")
    return 1 / _rat(x)


def simplify(x):
    """Drop to a plain rational when the z-part vanishes."""
    if isinstance(x, CycScalar) and x.b == 0:
        return x.a
    return x


def format_scalar(x) -> str:
    x = simplify(x)
    if isinstance(x, CycScalar):
        sign = "+" if x.b >= 0 else "-"
        return f"({x.a}{sign}{abs(x.b)}z)"
    return str(_rat(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_CYC_RE = re.compile(rf"^\(\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)?\s*z\s*\)$")


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`."""
    s = text.strip()
    m = _CYC_RE.match(s)
    if m:
        a, sign, b = m.groups()
        b = Fraction(b) if b else Fraction(1)
        return CycScalar(Fraction(a), b if sign == "+" else -b)
    if re.fullmatch(_RAT, s):
        return Fraction(s)
    raise ValueError(f"cannot parse scalar {text!r}")


def is_zero(x) -> bool:
    return not x
