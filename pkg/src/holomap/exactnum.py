"""Exact arithmetic in Q and Q(sqrt(2)) with decidable sign and classification."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Union

from .errors import DivisionByZero

Rational = Fraction

_Coercible = Union[int, Fraction, "ExactScalar"]


def _as_fraction(x: Union[int, Fraction]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _fsign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@total_ordering
class ExactScalar:
    """The number u + v*sqrt(2) with rational u, v, in canonical form."""

    __slots__ = ("_u", "_v")

    def __init__(self, u: Union[int, Fraction] = 0, v: Union[int, Fraction] = 0):
        self._u = _as_fraction(u)
        self._v = _as_fraction(v)

    @property
    def u(self) -> Fraction:
        return self._u

    @property
    def v(self) -> Fraction:
        return self._v

    @staticmethod
    def _coerce(x: _Coercible) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar(x)
        return NotImplemented

    def __add__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self._u + other._u, self._v + other._v)

    __radd__ = __add__

    def __sub__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self._u - other._u, self._v - other._v)

    def __rsub__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(
            self._u * other._u + 2 * self._v * other._v,
            self._u * other._v + self._v * other._u,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self._u, -self._v)

    def norm(self) -> Fraction:
        return self._u * self._u - 2 * self._v * self._v

    def __truediv__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.norm()
        if not n:
            raise DivisionByZero("division by zero in Q(sqrt(2))")
        c = other.conjugate()
        return ExactScalar(
            (self._u * c._u + 2 * self._v * c._v) / n,
            (self._u * c._v + self._v * c._u) / n,
        )

    def __rtruediv__(self, other: _Coercible) -> "ExactScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self._u, -self._v)

    def __pos__(self) -> "ExactScalar":
        return self

    def __pow__(self, exponent: int) -> "ExactScalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise TypeError("only nonnegative integer powers are exact")
        result = ExactScalar(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._u == other._u and self._v == other._v

    def __hash__(self) -> int:
        return hash((self._u, self._v))

    def __bool__(self) -> bool:
        return bool(self._u) or bool(self._v)

    def sign(self) -> int:
        su, sv = _fsign(self._u), _fsign(self._v)
        if sv == 0:
            return su
        if su == 0:
            return sv
        if su == sv:
            return su
        # Opposite signs: |u| against |v|*sqrt(2), i.e. u^2 against 2 v^2.
        # Equality is impossible for nonzero u, v (sqrt(2) is irrational).
        d = self._u * self._u - 2 * self._v * self._v
        return su if d > 0 else sv

    def __lt__(self, other: _Coercible) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __abs__(self) -> "ExactScalar":
        return -self if self.sign() < 0 else self

    @property
    def is_rational(self) -> bool:
        return not self._v

    @property
    def is_integer(self) -> bool:
        return not self._v and self._u.denominator == 1

    @property
    def is_natural(self) -> bool:
        return self.is_integer and self._u > 0

    def as_fraction(self) -> Fraction:
        if self._v:
            raise ValueError(f"{self} is irrational")
        return self._u

    def as_integer(self) -> int:
        f = self.as_fraction()
        if f.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return f.numerator

    def to_float(self) -> float:
        if not self._v:
            return float(self._u)
        bits = 64
        while True:
            lo = Fraction(isqrt(2 << (2 * bits)), 1 << bits)
            hi = lo + Fraction(1, 1 << bits)
            a = float(self._u + self._v * lo)
            b = float(self._u + self._v * hi)
            if a == b:
                return a
            bits *= 2

    def __float__(self) -> float:
        return self.to_float()

    def __repr__(self) -> str:
        return f"ExactScalar({self._u!r}, {self._v!r})"

    def __str__(self) -> str:
        if not self._v:
            return _frac_str(self._u)
        tail = _frac_str(abs(self._v))
        op = "+" if self._v > 0 else "-"
        return f"{_frac_str(self._u)}{op}{tail}*s2"


def _frac_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
SQRT2 = ExactScalar(0, 1)


def classify_scalar(a: ExactScalar):
    """Classify a as ('natural', n), ('integer', z), ('rational', Fraction) or
    ('irrational', None). Natural means a positive integer."""
    if a.v:
        return ("irrational", None)
    u = a.u
    if u.denominator != 1:
        return ("rational", u)
    if u > 0:
        return ("natural", int(u))
    return ("integer", int(u))


def to_float(a: ExactScalar) -> float:
    """Nearest double to the exact real a."""
    return a.to_float()


def format_scalar(a: ExactScalar) -> str:
    """Canonical text form, e.g. '3/2', '0+1*s2', '1/2-1*s2'."""
    return str(a)
