"""Membership tests for the varieties of Pfaffian gates and cogates.

A gate ``sum_I a_I |I>`` is Pfaffian when its odd-size coefficients vanish,
``a_{} = 1``, and the quadratic Grassmann-Pluecker relations hold.  The
relations are written in Wick form: for index sets ``I = S+R`` and
``J = S+T`` (``S = I & J``) with ``R+T = {x_1 < ... < x_m}``,

    sum_l (-1)^l  a_{I ^ x_l} a_{J ^ x_l} = 0.

Every summand is ``a_{S+A} a_{S+B}`` for a split ``A + B = R + T``.  Cogates
use the same relations on ``a_I := c_{complement(I)}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exactfield import ONE, Scalar
from .tensor import QubitTensor, legs_of, mask_of, popcount

MAX_ARITY = 8
# |a| below this bound keeps every 8-term relation inside int64
_INT_FAST_BOUND = 1 << 28


@dataclass(frozen=True)
class GPRelation:
    """One quadratic relation, indexed by disjoint leg sets ``S, R, T``."""

    S: tuple[int, ...]
    R: tuple[int, ...]
    T: tuple[int, ...]
    summands: tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...] = field(compare=False)
    # (mask_left, mask_right, sign) on the full index sets S+A, S+B
    terms: tuple[tuple[int, int, int], ...] = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.R) + len(self.T)

    def evaluate(self, alpha) -> Scalar:
        """Value on gate coordinates ``alpha[mask]``."""
        total = 0
        for p, q, sign in self.terms:
            a, b = alpha[p], alpha[q]
            if a and b:
                total = total + a * b if sign > 0 else total - a * b
        return total

    def __str__(self) -> str:
        def name(mask):
            return "a[" + "".join(str(k) for k in legs_of(mask)) + "]"

        parts = []
        for p, q, sign in self.terms:
            parts.append(f"{'+' if sign > 0 else '-'} {name(p)}{name(q)}")
        body = " ".join(parts)
        return body[2:] if body.startswith("+ ") else body


def wick_relation(S, R, T) -> GPRelation:
    """The relation for ``I = S+R``, ``J = S+T`` (1-based legs)."""
    S, R, T = (tuple(sorted(x)) for x in (S, R, T))
    if set(S) & set(R) or set(S) & set(T) or set(R) & set(T):
        raise ValueError("S, R, T must be disjoint")
    s, r, t = mask_of(S), mask_of(R), mask_of(T)
    summands = []
    terms: dict[tuple[int, int], int] = {}
    for l, x in enumerate(sorted(R + T), start=1):
        bit = 1 << (x - 1)
        a, b = r ^ bit, t ^ bit
        sign = -1 if l % 2 else 1
        summands.append((legs_of(a), legs_of(b), sign))
        key = (min(s | a, s | b), max(s | a, s | b))
        terms[key] = terms.get(key, 0) + sign
    combined = tuple((p, q, c) for (p, q), c in sorted(terms.items()) if c)
    return GPRelation(S, R, T, tuple(summands), combined)


def _canonical(terms):
    if not terms:
        return None
    if terms[0][2] < 0:
        terms = tuple((p, q, -c) for p, q, c in terms)
    return terms


@lru_cache(maxsize=None)
def enumerate_relations(n: int, max_k: int | None = None) -> tuple[GPRelation, ...]:
    """Distinct nontrivial relations on ``n`` legs.

    Only pairs with ``|I|`` and ``|J|`` odd are used (their summands touch
    even index sets only; the odd coordinates are handled by the parity
    check).  ``max_k`` keeps relations with at most ``2*max_k + 2``
    summands.  Relations that agree up to sign are listed once, keeping
    the representative with the smallest ``R``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ARITY:
        raise ValueError(f"relation enumeration is limited to n <= {MAX_ARITY}")
    best: dict[tuple, tuple] = {}
    full = (1 << n) - 1
    for i in range(1 << n):
        if popcount(i) % 2 == 0:
            continue
        for j in range(1 << n):
            if popcount(j) % 2 == 0 or i == j:
                continue
            m = popcount(i ^ j)
            if m < 4 or (max_k is not None and m > 2 * max_k + 2):
                continue
            s, r, t = i & j, i & ~j & full, j & ~i & full
            rank = (popcount(r), r, t)
            rel = wick_relation(legs_of(s), legs_of(r), legs_of(t))
            key = _canonical(rel.terms)
            if key is None:
                continue
            prev = best.get(key)
            if prev is None or rank < prev[0]:
                best[key] = (rank, rel)
    rels = sorted((v[1] for v in best.values()), key=lambda g: (g.size, g.S, g.R, g.T))
    return tuple(rels)


@lru_cache(maxsize=None)
def _compiled(n: int):
    rels = enumerate_relations(n)
    left, right, sign, starts = [], [], [], []
    for rel in rels:
        starts.append(len(left))
        for p, q, c in rel.terms:
            left.append(p)
            right.append(q)
            sign.append(c)
    return (
        rels,
        np.array(left, dtype=np.int64),
        np.array(right, dtype=np.int64),
        np.array(sign, dtype=np.int64),
        np.array(starts, dtype=np.int64),
    )


def _small_ints(alpha) -> list[int] | None:
    out = []
    for a in alpha:
        if isinstance(a, Scalar):
            if not a.is_rational() or a.p.denominator != 1:
                return None
            v = a.p.numerator
        elif isinstance(a, int):
            v = a
        else:
            return None
        if abs(v) >= _INT_FAST_BOUND:
            return None
        out.append(v)
    return out


def first_violated(alpha, n: int) -> tuple[GPRelation, object] | None:
    """First relation (in enumeration order) not vanishing on ``alpha``."""
    rels, left, right, sign, starts = _compiled(n)
    if not rels:
        return None
    ints = _small_ints(alpha)
    if ints is not None:
        a = np.array(ints, dtype=np.int64)
        vals = np.add.reduceat(sign * a[left] * a[right], starts)
        bad = np.flatnonzero(vals)
        if bad.size == 0:
            return None
        k = int(bad[0])
        return rels[k], Scalar(int(vals[k]))
    for rel in rels:
        v = rel.evaluate(alpha)
        if v:
            return rel, v
    return None


# -- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    reason: str
    relation: GPRelation | None = None
    value: object = None

    def __bool__(self) -> bool:
        return self.member


def _gate_coordinates(t: QubitTensor, side: str) -> list:
    if side == "gate":
        if not t.is_ket:
            raise ValueError("gate membership needs an all-ket tensor")
        return list(t.coeffs)
    if side == "cogate":
        if not t.is_bra:
            raise ValueError("cogate membership needs an all-bra tensor")
        full = (1 << t.arity) - 1
        return [t.coeffs[full ^ m] for m in range(1 << t.arity)]
    raise ValueError("side must be 'gate' or 'cogate'")


def membership(t: QubitTensor, side: str, cone: bool = False) -> MembershipReport:
    """Check ``t`` against the (co)gate variety, or its cone if ``cone``."""
    if t.arity > MAX_ARITY:
        raise ValueError(f"membership testing is limited to arity <= {MAX_ARITY}")
    alpha = _gate_coordinates(t, side)
    for m, a in enumerate(alpha):
        if a and popcount(m) % 2:
            idx = m if side == "gate" else ((1 << t.arity) - 1) ^ m
            bits = "".join("1" if idx >> k & 1 else "0" for k in range(t.arity))
            return MembershipReport(False, f"odd-support coefficient at index {bits}")
    if not cone and alpha[0] != ONE:
        where = "<1...1|" if side == "cogate" else "|0...0>"
        return MembershipReport(False, f"normalisation: coefficient of {where} is {alpha[0]}, not 1")
    hit = first_violated(alpha, t.arity)
    if hit is not None:
        rel, value = hit
        return MembershipReport(False, "Grassmann-Pluecker relation violated", rel, value)
    return MembershipReport(True, "all relations vanish")


def is_pfaffian_gate_point(t: QubitTensor) -> bool:
    return membership(t, "gate").member


def is_pfaffian_cogate_point(t: QubitTensor) -> bool:
    return membership(t, "cogate").member


def is_cone_point(t: QubitTensor, side: str) -> bool:
    return membership(t, side, cone=True).member


def reconstruct_gate_matrix(t: QubitTensor, side: str):
    """Skew matrix read off the pair coordinates (needs ``a_{} != 0``).

    For a point of the variety, ``sPf`` of the returned matrix scaled by
    ``a_{}`` reproduces the tensor; this gives a membership test independent
    of the quadratic relations.
    """
    from .pfaffian import LabeledSkewMatrix

    alpha = _gate_coordinates(t, side)
    base = alpha[0]
    if not base:
        raise ValueError("normalising coordinate is zero")
    n = t.arity
    k = base.inverse() if isinstance(base, Scalar) else Scalar(base).inverse()
    upper = {(i, j): alpha[(1 << (i - 1)) | (1 << (j - 1))] * k for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return LabeledSkewMatrix.from_upper(n, upper), base


def in_chart_by_reconstruction(t: QubitTensor, side: str) -> bool:
    """Cone membership on the chart ``a_{} != 0`` without using the relations."""
    from .pfaffian import all_sub_pfaffians

    alpha = _gate_coordinates(t, side)
    if not alpha[0]:
        raise ValueError("normalising coordinate is zero")
    M, base = reconstruct_gate_matrix(t, side)
    pfs = all_sub_pfaffians(M)
    return all(base * p == a for p, a in zip(pfs, alpha))
