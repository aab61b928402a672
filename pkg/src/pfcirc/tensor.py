"""Dense qubit tensors with ket (contravariant) and bra (covariant) legs.

Coefficients are indexed by subsets of the legs ``{1..n}``, encoded as
bitmasks with leg 1 in the lowest bit.  ``|I>`` carries a 1 exactly on the
legs in ``I``.  With this encoding the 16 coordinates of an arity-4 tensor
read ``x_{1 + mask}``, which puts the SWAP tensor's nonzero coefficients at
``x1, x6, x11, x16``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exactfield import ONE, ZERO, Scalar, as_scalar

KET = "k"
BRA = "b"


def mask_of(legs: Iterable[int]) -> int:
    """Bitmask of a set of 1-based legs."""
    m = 0
    for leg in legs:
        m |= 1 << (leg - 1)
    return m


def legs_of(mask: int) -> tuple[int, ...]:
    """1-based legs set in ``mask``, increasing."""
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_to_mask(bits: str) -> int:
    """``"1010"`` (leg 1 first) -> bitmask."""
    m = 0
    for k, ch in enumerate(bits):
        if ch == "1":
            m |= 1 << k
        elif ch != "0":
            raise ValueError(f"bad bit string {bits!r}")
    return m


def mask_to_bits(mask: int, n: int) -> str:
    return "".join("1" if mask >> k & 1 else "0" for k in range(n))


@dataclass(frozen=True, eq=False)
class QubitTensor:
    """Arity-n tensor over 2-dimensional legs.

    ``variance[k]`` is ``"k"`` (ket) or ``"b"`` (bra) for leg ``k+1``;
    ``coeffs[mask]`` is the coefficient of the basis (co)vector with 1s on
    the legs in ``mask``.
    """

    variance: str
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if any(v not in (KET, BRA) for v in self.variance):
            raise ValueError(f"variance must use 'k'/'b', got {self.variance!r}")
        if len(self.coeffs) != 1 << len(self.variance):
            raise ValueError(
                f"arity {len(self.variance)} needs {1 << len(self.variance)} coefficients, got {len(self.coeffs)}"
            )

    @property
    def arity(self) -> int:
        return len(self.variance)

    @property
    def is_ket(self) -> bool:
        return all(v == KET for v in self.variance)

    @property
    def is_bra(self) -> bool:
        return all(v == BRA for v in self.variance)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_coeffs(cls, variance: str, coeffs: Sequence) -> "QubitTensor":
        return cls(variance, tuple(as_scalar(c) for c in coeffs))

    @classmethod
    def zero(cls, variance: str) -> "QubitTensor":
        return cls(variance, (ZERO,) * (1 << len(variance)))

    @classmethod
    def scalar(cls, value=1) -> "QubitTensor":
        return cls("", (as_scalar(value),))

    @classmethod
    def from_terms(cls, variance: str, terms: Mapping) -> "QubitTensor":
        """Build from ``{bitstring or mask: coefficient}``."""
        n = len(variance)
        coeffs = [ZERO] * (1 << n)
        for key, value in terms.items():
            mask = _parse_key(key, n)
            coeffs[mask] = coeffs[mask] + as_scalar(value)
        return cls(variance, tuple(coeffs))

    @classmethod
    def ket(cls, *bitstrings: str) -> "QubitTensor":
        """Sum of computational-basis kets, e.g. ``ket("00", "11")``."""
        n = len(bitstrings[0])
        return cls.from_terms(KET * n, {b: 1 for b in bitstrings})

    @classmethod
    def bra(cls, *bitstrings: str) -> "QubitTensor":
        n = len(bitstrings[0])
        return cls.from_terms(BRA * n, {b: 1 for b in bitstrings})

    # -- access ----------------------------------------------------------

    def __getitem__(self, key) -> Scalar:
        if isinstance(key, int):
            return self.coeffs[key]
        if isinstance(key, str):
            return self.coeffs[bits_to_mask(key)]
        return self.coeffs[mask_of(key)]

    def support(self) -> list[int]:
        return [m for m, c in enumerate(self.coeffs) if c]

    def terms(self) -> dict[str, Scalar]:
        return {mask_to_bits(m, self.arity): c for m, c in enumerate(self.coeffs) if c}

    # -- linear structure -------------------------------------------------

    def _check_same(self, other: "QubitTensor"):
        if self.variance != other.variance:
            raise ValueError(f"variance mismatch: {self.variance!r} vs {other.variance!r}")

    def __add__(self, other: "QubitTensor") -> "QubitTensor":
        self._check_same(other)
        return QubitTensor(self.variance, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QubitTensor") -> "QubitTensor":
        self._check_same(other)
        return QubitTensor(self.variance, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "QubitTensor":
        return QubitTensor(self.variance, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "QubitTensor":
        c = as_scalar(c)
        return QubitTensor(self.variance, tuple(c * a for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, QubitTensor):
            return NotImplemented
        return self.variance == other.variance and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.variance, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def transpose(self) -> "QubitTensor":
        """Same coefficients with every leg's variance flipped."""
        flipped = "".join(BRA if v == KET else KET for v in self.variance)
        return QubitTensor(flipped, self.coeffs)

    def as_variance(self, variance: str) -> "QubitTensor":
        if len(variance) != self.arity:
            raise ValueError("arity mismatch")
        return QubitTensor(variance, self.coeffs)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})|{b}>" for b, c in self.terms().items()) or "0"
        return f"QubitTensor[{self.variance}]({body})"


def _parse_key(key, n: int) -> int:
    if isinstance(key, int):
        mask = key
    else:
        key = str(key)
        if len(key) == n and set(key) <= {"0", "1"}:
            mask = bits_to_mask(key)
        else:
            mask = int(key)
    if not 0 <= mask < 1 << n:
        raise ValueError(f"index {key!r} out of range for arity {n}")
    return mask


# -- 2x2 matrices -------------------------------------------------------------


@dataclass(frozen=True)
class TwoByTwo:
    """Matrix ``[[a, b], [c, d]]`` over Q(sqrt2, i)."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    @classmethod
    def of(cls, a, b, c, d) -> "TwoByTwo":
        return cls(as_scalar(a), as_scalar(b), as_scalar(c), as_scalar(d))

    @classmethod
    def identity(cls) -> "TwoByTwo":
        return cls(ONE, ZERO, ZERO, ONE)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return (self.a, self.b, self.c, self.d)[2 * i + j]

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "TwoByTwo":
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular 2x2 matrix")
        k = det.inverse()
        return TwoByTwo(self.d * k, -self.b * k, -self.c * k, self.a * k)

    def transpose(self) -> "TwoByTwo":
        return TwoByTwo(self.a, self.c, self.b, self.d)

    def __matmul__(self, other: "TwoByTwo") -> "TwoByTwo":
        return TwoByTwo(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


# -- operations -----------------------------------------------------------------


def tensor_product(s: QubitTensor, t: QubitTensor) -> QubitTensor:
    """Legs of ``s`` first, then legs of ``t``."""
    shift = s.arity
    coeffs = [ZERO] * (1 << (s.arity + t.arity))
    for mt, ct in enumerate(t.coeffs):
        if not ct:
            continue
        base = mt << shift
        for ms, cs in enumerate(s.coeffs):
            if cs:
                coeffs[base | ms] = cs * ct
    return QubitTensor(s.variance + t.variance, tuple(coeffs))


def tensor_product_all(tensors: Iterable[QubitTensor]) -> QubitTensor:
    out = QubitTensor.scalar(1)
    for t in tensors:
        out = tensor_product(out, t)
    return out


def pairing(cov: QubitTensor, vec: QubitTensor) -> Scalar:
    """Standard pairing ``sum_I cov[I] * vec[I]`` of a covector with a vector."""
    if cov.arity != vec.arity:
        raise ValueError(f"arity mismatch: {cov.arity} vs {vec.arity}")
    if not cov.is_bra or not vec.is_ket:
        raise ValueError("pairing needs an all-bra covector and an all-ket vector")
    total = ZERO
    for a, b in zip(cov.coeffs, vec.coeffs):
        if a and b:
            total = total + a * b
    return total


def parity_projection(t: QubitTensor, parity: str) -> QubitTensor:
    """Keep coefficients on index sets of the given size parity."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    want = 0 if parity == "even" else 1
    return QubitTensor(
        t.variance,
        tuple(c if popcount(m) % 2 == want else ZERO for m, c in enumerate(t.coeffs)),
    )


def has_parity_support(t: QubitTensor, parity: str) -> bool:
    other = "odd" if parity == "even" else "even"
    return parity_projection(t, other).is_zero()


def permute_legs(t: QubitTensor, order: Sequence[int]) -> QubitTensor:
    """New tensor whose leg ``k+1`` is old leg ``order[k]`` (1-based)."""
    n = t.arity
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {order}")
    coeffs = [ZERO] * (1 << n)
    for m, c in enumerate(t.coeffs):
        if not c:
            continue
        new = 0
        for k, old in enumerate(order):
            if m >> (old - 1) & 1:
                new |= 1 << k
        coeffs[new] = c
    variance = "".join(t.variance[old - 1] for old in order)
    return QubitTensor(variance, tuple(coeffs))


def _apply_one_leg(coeffs: list[Scalar], k: int, g: TwoByTwo, ket: bool) -> list[Scalar]:
    # ket legs: new[i] = sum_j g[i, j] old[j]; bra legs: new[i] = sum_j old[j] g[j, i]
    bit = 1 << k
    if ket:
        m00, m01, m10, m11 = g.a, g.b, g.c, g.d
    else:
        m00, m01, m10, m11 = g.a, g.c, g.b, g.d
    out = list(coeffs)
    for m in range(len(coeffs)):
        if m & bit:
            continue
        x0 = coeffs[m]
        x1 = coeffs[m | bit]
        out[m] = m00 * x0 + m01 * x1
        out[m | bit] = m10 * x0 + m11 * x1
    return out


def apply_basis_change(t: QubitTensor, mats: Sequence[TwoByTwo | None]) -> QubitTensor:
    """Act with one 2x2 matrix per leg.

    Ket legs are multiplied on the left; bra legs are composed on the
    right (``phi -> phi o g``).  ``None`` means identity on that leg.
    Matrices are used exactly as given, no inversion.
    """
    if len(mats) != t.arity:
        raise ValueError(f"need {t.arity} matrices, got {len(mats)}")
    coeffs = list(t.coeffs)
    for k, g in enumerate(mats):
        if g is None:
            continue
        coeffs = _apply_one_leg(coeffs, k, g, t.variance[k] == KET)
    return QubitTensor(t.variance, tuple(coeffs))


def swap_gate(kind: str = "ket") -> QubitTensor:
    """SWAP vectorised on four legs: legs 1,3 and 2,4 carry equal indices."""
    bits = ("0000", "1010", "0101", "1111")
    if kind == "ket":
        return QubitTensor.ket(*bits)
    if kind == "bra":
        return QubitTensor.bra(*bits)
    raise ValueError("kind must be 'ket' or 'bra'")


def flatten_coeffs(t: QubitTensor) -> list[Scalar]:
    """The 16 coordinates ``x1..x16`` of an arity-4 tensor (``x[k-1]`` is x_k)."""
    if t.arity != 4:
        raise ValueError(f"flatten_coeffs needs arity 4, got {t.arity}")
    return list(t.coeffs)


def complement_map(t: QubitTensor) -> QubitTensor:
    """Move the coefficient of ``I`` to the complement of ``I`` (same variance)."""
    full = (1 << t.arity) - 1
    coeffs = [ZERO] * len(t.coeffs)
    for m, c in enumerate(t.coeffs):
        coeffs[full ^ m] = c
    return QubitTensor(t.variance, tuple(coeffs))


# -- JSON ---------------------------------------------------------------------


def tensor_to_json(t: QubitTensor) -> dict:
    return {
        "arity": t.arity,
        "variance": t.variance,
        "coeffs": {mask_to_bits(m, t.arity): str(c) for m, c in enumerate(t.coeffs) if c},
    }


def tensor_from_json(obj: Mapping) -> QubitTensor:
    n = int(obj["arity"])
    variance = obj.get("variance", KET * n)
    if len(variance) != n:
        raise ValueError(f"variance {variance!r} does not match arity {n}")
    return QubitTensor.from_terms(variance, obj.get("coeffs", {}))


def dumps(t: QubitTensor) -> str:
    return json.dumps(tensor_to_json(t), sort_keys=True)


def loads(text: str) -> QubitTensor:
    return tensor_from_json(json.loads(text))
