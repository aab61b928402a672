"""Generators of the SL(2)^4 invariant ring on four-qubit tensors.

The coordinates ``x1..x16`` are the coefficients in bitmask order (leg 1 in
the lowest bit), see :func:`pfcirc.tensor.flatten_coeffs`.  The formulas
below only use ``+``, ``-`` and ``*``, so they evaluate on exact scalars
and on :class:`pfcirc.polyq.PolyQ` variables alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactfield import ONE, Scalar
from .tensor import KET, QubitTensor, TwoByTwo, apply_basis_change, flatten_coeffs

DEGREES = {"H": 2, "detL": 4, "detM": 4, "detB": 6}


def _x(x: Sequence):
    if len(x) != 16:
        raise ValueError(f"need 16 coordinates, got {len(x)}")
    return (None,) + tuple(x)  # 1-based


def hyperdeterminant_H(x: Sequence):
    x = _x(x)
    return (
        x[1] * x[16] - x[2] * x[15] - x[3] * x[14] + x[4] * x[13]
        - x[5] * x[12] + x[6] * x[11] + x[7] * x[10] - x[8] * x[9]
    )


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


def matrix_L(x: Sequence):
    x = _x(x)
    return [[x[1 + r + 4 * c] for c in range(4)] for r in range(4)]


def matrix_M(x: Sequence):
    x = _x(x)
    idx = [[1, 9, 3, 11], [2, 10, 4, 12], [5, 13, 7, 15], [6, 14, 8, 16]]
    return [[x[k] for k in row] for row in idx]


def matrix_B(x: Sequence):
    x = _x(x)
    P1 = x[1] * x[12] + x[4] * x[9] - x[3] * x[10] - x[2] * x[11]
    P2 = (
        x[1] * x[16] + x[4] * x[13] + x[5] * x[12] + x[8] * x[9]
        - x[3] * x[14] - x[2] * x[15] - x[7] * x[10] - x[6] * x[11]
    )
    P3 = x[5] * x[16] + x[8] * x[13] - x[6] * x[15] - x[7] * x[14]
    return [
        [x[1] * x[4] - x[2] * x[3], x[1] * x[8] + x[4] * x[5] - x[3] * x[6] - x[2] * x[7], x[5] * x[8] - x[6] * x[7]],
        [P1, P2, P3],
        [x[9] * x[12] - x[10] * x[11], x[9] * x[16] + x[12] * x[13] - x[11] * x[14] - x[10] * x[15], x[13] * x[16] - x[14] * x[15]],
    ]


def det_L(x: Sequence):
    return _det(matrix_L(x))


def det_M(x: Sequence):
    return _det(matrix_M(x))


def det_B(x: Sequence):
    return _det(matrix_B(x))


@dataclass(frozen=True)
class InvariantVector:
    H: Scalar
    detL: Scalar
    detM: Scalar
    detB: Scalar

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.H, self.detL, self.detM, self.detB)

    def as_dict(self) -> dict[str, Scalar]:
        return {"H": self.H, "detL": self.detL, "detM": self.detM, "detB": self.detB}


def invariants_of_coords(x: Sequence) -> InvariantVector:
    x = [Scalar(v) if not isinstance(v, Scalar) else v for v in x]
    return InvariantVector(hyperdeterminant_H(x), det_L(x), det_M(x), det_B(x))


def invariants(t: QubitTensor) -> InvariantVector:
    """The four generators on the 16 coefficients of an arity-4 tensor."""
    return invariants_of_coords(flatten_coeffs(t))


def theta_map(t: QubitTensor) -> QubitTensor:
    """``(T^{x4}) v`` with ``T|0> = |1>``, ``T|1> = -|0>``: coefficient of ``I`` moves to
    the complement with sign ``(-1)^{|I|}``.  Variance is kept."""
    n = t.arity
    full = (1 << n) - 1
    coeffs = [None] * (1 << n)
    for m, c in enumerate(t.coeffs):
        coeffs[full ^ m] = -c if bin(m).count("1") % 2 else c
    return QubitTensor(t.variance, tuple(coeffs))


def phi(v: QubitTensor) -> QubitTensor:
    """``v -> (Theta v)^T``: ket tensor to bra tensor (and back, by the same formula)."""
    return theta_map(v).transpose()


def dual_invariants(t: QubitTensor) -> InvariantVector:
    """Generators for the contragredient action on covectors: ``H(phi(v)^T)`` etc."""
    if t.arity != 4 or not t.is_bra:
        raise ValueError("dual invariants need an all-bra tensor of arity 4")
    return invariants(theta_map(t).transpose())


def psi_involution(t: QubitTensor) -> QubitTensor:
    """``sum_I |I><complement(I)|`` applied to coefficients (no signs)."""
    if t.arity != 4:
        raise ValueError(f"psi needs arity 4, got {t.arity}")
    full = 15
    return QubitTensor(t.variance, tuple(t.coeffs[full ^ m] for m in range(16)))


def act(t: QubitTensor, gs: Sequence[TwoByTwo]) -> QubitTensor:
    """SL(2)^4 action: ``g v`` on ket legs, ``phi o g^-1`` on bra legs."""
    mats = [g if t.variance[k] == KET else g.inverse() for k, g in enumerate(gs)]
    return apply_basis_change(t, mats)


def check_invariance(t: QubitTensor, gs: Sequence[TwoByTwo]) -> bool:
    """True iff the four generators (dual ones for covectors) are unchanged by ``gs``."""
    if t.arity != 4 or len(gs) != 4:
        raise ValueError("check_invariance needs an arity-4 tensor and four matrices")
    for g in gs:
        if g.det() != ONE:
            raise ValueError(f"matrix {g} is not unimodular (det = {g.det()})")
    if t.is_ket:
        f = invariants
    elif t.is_bra:
        f = dual_invariants
    else:
        raise ValueError("mixed-variance tensors have no invariants here")
    return f(t) == f(act(t, gs))


SWAP_VALUES = (2, 1, 0, 0)
