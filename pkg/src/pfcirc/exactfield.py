"""Exact arithmetic in the field Q(sqrt2, i).

An element is stored as four rationals ``(p, q, r, s)`` standing for
``p + q*sqrt2 + r*i + s*i*sqrt2``.  Since ``{1, sqrt2, i, i*sqrt2}`` is a
Q-basis, equality and zero-testing are coordinate-wise and exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "add", "mul", "inv", "to_float", "as_scalar", "ZERO", "ONE", "SQRT2", "I"]

_SQRT2_FLOAT = math.sqrt(2.0)


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as a rational coordinate")


class Scalar:
    """Element ``p + q*sqrt2 + r*i + s*i*sqrt2`` of Q(sqrt2, i)."""

    __slots__ = ("p", "q", "r", "s")

    def __init__(self, p=0, q=0, r=0, s=0):
        if isinstance(p, Scalar) and not (q or r or s):
            self.p, self.q, self.r, self.s = p.p, p.q, p.r, p.s
            return
        if isinstance(p, str) and not (q or r or s):
            other = Scalar.parse(p)
            self.p, self.q, self.r, self.s = other.p, other.q, other.r, other.s
            return
        self.p = _rat(p)
        self.q = _rat(q)
        self.r = _rat(r)
        self.s = _rat(s)

    @classmethod
    def _make(cls, p: Fraction, q: Fraction, r: Fraction, s: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        obj.p = p
        obj.q = q
        obj.r = r
        obj.s = s
        return obj

    # -- predicates -----------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.p, self.q, self.r, self.s)

    def is_rational(self) -> bool:
        return not (self.q or self.r or self.s)

    def is_zero(self) -> bool:
        return not (self.p or self.q or self.r or self.s)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar._make(self.p + other.p, self.q + other.q, self.r + other.r, self.s + other.s)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(-self.p, -self.q, -self.r, -self.s)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar._make(self.p - other.p, self.q - other.q, self.r - other.r, self.s - other.s)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                f = Fraction(other)
                return Scalar._make(self.p * f, self.q * f, self.r * f, self.s * f)
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        p, q, r, s = self.p, self.q, self.r, self.s
        P, Q, R, S = other.p, other.q, other.r, other.s
        if not (q or r or s):
            return Scalar._make(p * P, p * Q, p * R, p * S)
        if not (Q or R or S):
            return Scalar._make(p * P, q * P, r * P, s * P)
        # (a + b i)(A + B i) with a = p + q sqrt2, b = r + s sqrt2
        return Scalar._make(
            p * P + 2 * q * Q - r * R - 2 * s * S,
            p * Q + q * P - r * S - s * R,
            p * R + 2 * q * S + r * P + 2 * s * Q,
            p * S + q * R + r * Q + s * P,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """Complex conjugate (i -> -i)."""
        return Scalar._make(self.p, self.q, -self.r, -self.s)

    def sqrt2_conjugate(self) -> "Scalar":
        """Galois conjugate sqrt2 -> -sqrt2."""
        return Scalar._make(self.p, -self.q, self.r, -self.s)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, i)")
        if self.is_rational():
            return Scalar._make(1 / self.p, Fraction(0), Fraction(0), Fraction(0))
        # x * conj(x) lies in Q(sqrt2); then rationalise sqrt2.
        c = self.conjugate()
        n = self * c
        alpha, beta = n.p, n.q
        norm = alpha * alpha - 2 * beta * beta
        return c * Scalar._make(alpha / norm, -beta / norm, Fraction(0), Fraction(0))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise ZeroDivisionError("division by zero in Q(sqrt2, i)")
                f = 1 / Fraction(other)
                return Scalar._make(self.p * f, self.q * f, self.r * f, self.s * f)
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison, hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.p == other.p and self.q == other.q and self.r == other.r and self.s == other.s
        if isinstance(other, (int, Fraction)):
            return self.p == other and not (self.q or self.r or self.s)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.p)
        return hash(self.coords)

    # -- conversion ------------------------------------------------------

    def to_complex(self) -> complex:
        re_ = float(self.p) + float(self.q) * _SQRT2_FLOAT
        im_ = float(self.r) + float(self.s) * _SQRT2_FLOAT
        return complex(re_, im_)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar('{format_scalar(self)}')"

    @staticmethod
    def parse(text: str) -> "Scalar":
        return parse_scalar(text)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions and scalar strings to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, (int, Rational)):
        return Scalar._make(Fraction(x), Fraction(0), Fraction(0), Fraction(0))
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar()
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
I = Scalar(0, 0, 1)


def add(x: Scalar, y: Scalar) -> Scalar:
    return as_scalar(x) + as_scalar(y)


def mul(x: Scalar, y: Scalar) -> Scalar:
    return as_scalar(x) * as_scalar(y)


def inv(x: Scalar) -> Scalar:
    return as_scalar(x).inverse()


def to_float(x: Scalar) -> complex:
    return as_scalar(x).to_complex()


# -- text form -------------------------------------------------------------

_BASIS_NAMES = ("", "sqrt2", "i", "i*sqrt2")


def _format_rational(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x: Scalar) -> str:
    """Render as ``p + q*sqrt2 + r*i + s*i*sqrt2``, omitting zero terms."""
    parts: list[str] = []
    for coeff, name in zip(x.coords, _BASIS_NAMES):
        if not coeff:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if not name:
            body = _format_rational(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{_format_rational(mag)}*{name}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:\.\d*)?(?:/\d+)?|\.\d+)?
        \s*(?P<star>\*)?\s*
        (?P<basis>i\s*\*\s*sqrt2|sqrt2\s*\*\s*i|sqrt2|i)?
        \s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse the text form written by :func:`format_scalar`.

    Also accepts plain rationals (``"-3/4"``), decimals (``"0.5"``) and
    bases without coefficient (``"sqrt2"``, ``"-i"``).
    """
    src = text.strip()
    if not src:
        raise ValueError("empty scalar string")
    coords = [Fraction(0)] * 4
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        sign, coef, star, basis = m.group("sign", "coef", "star", "basis")
        if sign is None and not first:
            raise ValueError(f"missing operator in scalar {text!r}")
        if coef is None and basis is None:
            raise ValueError(f"dangling sign in scalar {text!r}")
        if star and (coef is None or basis is None):
            raise ValueError(f"misplaced '*' in scalar {text!r}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        key = re.sub(r"\s+", "", basis or "")
        idx = {"": 0, "sqrt2": 1, "i": 2, "i*sqrt2": 3, "sqrt2*i": 3}[key]
        coords[idx] += value
        pos = m.end()
        first = False
    return Scalar._make(*coords)
