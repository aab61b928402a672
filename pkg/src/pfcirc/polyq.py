"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exp = tuple[int, ...]


class PolyQ:
    """Polynomial in ``n`` variables; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exp, object] | None = None):
        self.n = n
        clean: dict[Exp, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {n}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[Exp, Fraction]) -> "PolyQ":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "PolyQ":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "PolyQ":
        c = Fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "PolyQ":
        """The variable with 0-based index ``i``."""
        exp = [0] * n
        exp[i] = 1
        return cls._raw(n, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "PolyQ":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variables(cls, n: int) -> list["PolyQ"]:
        return [cls.var(n, i) for i in range(n)]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return PolyQ.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return PolyQ._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return PolyQ.zero(self.n)
            return PolyQ._raw(self.n, {e: c * f for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return PolyQ._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyQ.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.constant(self.n, other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def support_variables(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def linear_variable(self) -> tuple[int, Fraction] | None:
        """``(i, c)`` if the polynomial is ``c * x_i``."""
        if len(self.terms) != 1:
            return None
        (e, c), = self.terms.items()
        if sum(e) != 1:
            return None
        return e.index(1), c

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t = t * x**a
            total = total + t
        return total

    def substitute_zero(self, indices: Iterable[int]) -> "PolyQ":
        idx = list(indices)
        return PolyQ._raw(self.n, {e: c for e, c in self.terms.items() if not any(e[i] for i in idx)})

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-a for a in e])):
            c = self.terms[e]
            mono = "*".join(names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"PolyQ({self.to_string()})"

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, n: int, data: list) -> "PolyQ":
        return cls(n, {tuple(e): Fraction(c) for e, c in data})
