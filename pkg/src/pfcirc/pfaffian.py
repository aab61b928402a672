"""Labeled skew-symmetric matrices and sub-Pfaffian (co)gates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactfield import ONE, ZERO, Scalar, as_scalar
from .tensor import BRA, KET, QubitTensor

# Below this size the memoized expansion is used; above it, elimination.
EXPANSION_LIMIT = 12


@dataclass(frozen=True, eq=False)
class LabeledSkewMatrix:
    """Skew-symmetric matrix whose rows/columns carry increasing labels."""

    labels: tuple[int, ...]
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if any(a >= b for a, b in zip(self.labels, self.labels[1:])):
            raise ValueError(f"labels must be strictly increasing: {self.labels}")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"entries must be {n}x{n}")
        for i in range(n):
            for j in range(i, n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"not skew-symmetric at ({i + 1},{j + 1})")

    @property
    def size(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        """0-based position access."""
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, LabeledSkewMatrix):
            return NotImplemented
        return self.labels == other.labels and self.entries == other.entries

    def __hash__(self):
        return hash((self.labels, self.entries))

    def __add__(self, other: "LabeledSkewMatrix") -> "LabeledSkewMatrix":
        if self.labels != other.labels:
            raise ValueError("cannot add matrices with different labels")
        n = self.size
        return LabeledSkewMatrix(
            self.labels,
            tuple(tuple(self.entries[i][j] + other.entries[i][j] for j in range(n)) for i in range(n)),
        )

    def scale(self, c) -> "LabeledSkewMatrix":
        c = as_scalar(c)
        return LabeledSkewMatrix(self.labels, tuple(tuple(c * x for x in row) for row in self.entries))

    def relabel(self, labels: Sequence[int]) -> "LabeledSkewMatrix":
        return LabeledSkewMatrix(tuple(labels), self.entries)

    def upper(self) -> dict[tuple[int, int], Scalar]:
        """Nonzero strictly-upper entries keyed by (row label, column label)."""
        n = self.size
        return {
            (self.labels[i], self.labels[j]): self.entries[i][j]
            for i in range(n)
            for j in range(i + 1, n)
            if self.entries[i][j]
        }

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"LabeledSkewMatrix(labels={list(self.labels)}, [{rows}])"

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_upper(cls, n_or_labels, upper: Mapping | Sequence = ()) -> "LabeledSkewMatrix":
        """Build from strictly-upper entries.

        ``upper`` is either a mapping ``{(i, j): value}`` with 1-based
        positions ``i < j``, or the row-major list of the ``n(n-1)/2``
        upper entries ``m12, m13, ..., m1n, m23, ...``.
        """
        if isinstance(n_or_labels, int):
            labels = tuple(range(1, n_or_labels + 1))
        else:
            labels = tuple(n_or_labels)
        n = len(labels)
        rows = [[ZERO] * n for _ in range(n)]
        if isinstance(upper, Mapping):
            items = upper.items()
        else:
            pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            upper = list(upper)
            if len(upper) != len(pairs):
                raise ValueError(f"expected {len(pairs)} upper entries, got {len(upper)}")
            items = zip(pairs, upper)
        for (i, j), value in items:
            if not 1 <= i < j <= n:
                raise ValueError(f"bad upper position ({i},{j}) for size {n}")
            v = as_scalar(value)
            rows[i - 1][j - 1] = v
            rows[j - 1][i - 1] = -v
        return cls(labels, tuple(tuple(r) for r in rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], labels: Sequence[int] | None = None) -> "LabeledSkewMatrix":
        n = len(rows)
        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        return cls(labels, tuple(tuple(as_scalar(x) for x in row) for row in rows))

    @classmethod
    def zero(cls, n_or_labels) -> "LabeledSkewMatrix":
        return cls.from_upper(n_or_labels, {})

    @classmethod
    def empty(cls) -> "LabeledSkewMatrix":
        return cls((), ())


# -- Pfaffians ----------------------------------------------------------------


def _pfaffian_expansion(a: Sequence[Sequence[Scalar]], n: int) -> Scalar:
    memo: dict[int, Scalar] = {0: ONE}

    def pf(mask: int) -> Scalar:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        first = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << first)
        total = ZERO
        sign = 1
        m = rest
        row = a[first]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            x = row[j]
            if x:
                sub = pf(rest & ~(1 << j))
                if sub:
                    total = total + x * sub if sign > 0 else total - x * sub
            sign = -sign
        memo[mask] = total
        return total

    return pf((1 << n) - 1)


def _pfaffian_elimination(a: Sequence[Sequence[Scalar]], n: int) -> Scalar:
    # Skew Gaussian elimination in 2x2 blocks with exact field division.
    m = [list(row) for row in a]
    result = ONE
    for k in range(0, n - 1, 2):
        piv = next((j for j in range(k + 1, n) if m[k][j]), None)
        if piv is None:
            return ZERO
        if piv != k + 1:
            for row in m:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            m[k + 1], m[piv] = m[piv], m[k + 1]
            result = -result
        p = m[k][k + 1]
        result = result * p
        pinv = p.inverse()
        r0, r1 = m[k], m[k + 1]
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                upd = (r1[i] * r0[j] - r0[i] * r1[j]) * pinv
                if upd:
                    m[i][j] = m[i][j] + upd
                    m[j][i] = -m[i][j]
    return result


def pfaffian(M: LabeledSkewMatrix) -> Scalar:
    """Exact Pfaffian; ``Pf`` of the empty matrix is 1, odd sizes give 0."""
    n = M.size
    if n % 2:
        return ZERO
    if n == 0:
        return ONE
    if n <= EXPANSION_LIMIT:
        return _pfaffian_expansion(M.entries, n)
    return _pfaffian_elimination(M.entries, n)


def pfaffian_by_elimination(M: LabeledSkewMatrix) -> Scalar:
    n = M.size
    if n % 2:
        return ZERO
    return _pfaffian_elimination(M.entries, n)


def all_sub_pfaffians(M: LabeledSkewMatrix) -> list[Scalar]:
    """``out[mask] = Pf(M_I)`` for every subset ``I`` of positions."""
    n = M.size
    a = M.entries
    out = [ZERO] * (1 << n)
    out[0] = ONE
    for mask in range(1, 1 << n):
        m = mask
        cnt = 0
        while m:
            m &= m - 1
            cnt += 1
        if cnt % 2:
            continue
        first = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << first)
        row = a[first]
        total = ZERO
        sign = 1
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            x = row[j]
            if x:
                sub = out[rest & ~(1 << j)]
                if sub:
                    total = total + x * sub if sign > 0 else total - x * sub
            sign = -sign
        out[mask] = total
    return out


def principal_minor(M: LabeledSkewMatrix, positions) -> LabeledSkewMatrix:
    """Submatrix on the given 1-based positions (labels restricted)."""
    idx = sorted(set(positions))
    if idx and not (1 <= idx[0] and idx[-1] <= M.size):
        raise ValueError(f"positions out of range 1..{M.size}: {idx}")
    zero_based = [i - 1 for i in idx]
    return LabeledSkewMatrix(
        tuple(M.labels[i] for i in zero_based),
        tuple(tuple(M.entries[i][j] for j in zero_based) for i in zero_based),
    )


def sub_pfaffian_gate(M: LabeledSkewMatrix) -> QubitTensor:
    """``sum_I Pf(M_I) |I>``."""
    return QubitTensor(KET * M.size, tuple(all_sub_pfaffians(M)))


def sub_pfaffian_cogate(M: LabeledSkewMatrix) -> QubitTensor:
    """``sum_I Pf(M_I) <complement(I)|``."""
    pfs = all_sub_pfaffians(M)
    full = (1 << M.size) - 1
    coeffs = [ZERO] * len(pfs)
    for mask, v in enumerate(pfs):
        coeffs[full ^ mask] = v
    return QubitTensor(BRA * M.size, tuple(coeffs))


def interleaved_direct_sum(M: LabeledSkewMatrix, N: LabeledSkewMatrix) -> LabeledSkewMatrix:
    """Direct sum reordered so that the combined labels increase."""
    overlap = set(M.labels) & set(N.labels)
    if overlap:
        raise ValueError(f"label sets overlap: {sorted(overlap)}")
    labels = tuple(sorted(M.labels + N.labels))
    where = {lab: (0, i) for i, lab in enumerate(M.labels)}
    where.update({lab: (1, i) for i, lab in enumerate(N.labels)})
    rows = []
    for la in labels:
        sa, ia = where[la]
        src = M.entries if sa == 0 else N.entries
        row = []
        for lb in labels:
            sb, ib = where[lb]
            row.append(src[ia][ib] if sa == sb else ZERO)
        rows.append(tuple(row))
    return LabeledSkewMatrix(labels, tuple(rows))


def direct_sum_all(mats: Sequence[LabeledSkewMatrix]) -> LabeledSkewMatrix:
    out = LabeledSkewMatrix.empty()
    for m in mats:
        out = interleaved_direct_sum(out, m)
    return out


def twist(T: LabeledSkewMatrix) -> LabeledSkewMatrix:
    """Entry (i, j) multiplied by ``(-1)^(i+j+1)``, 1-based positions."""
    n = T.size
    return LabeledSkewMatrix(
        T.labels,
        tuple(
            tuple(T.entries[i][j] if (i + j) % 2 else -T.entries[i][j] for j in range(n))
            for i in range(n)
        ),
    )


def pair_value(X: LabeledSkewMatrix, T: LabeledSkewMatrix) -> Scalar:
    """``<sPf_cogate(T), sPf_gate(X)>`` computed as ``Pf(X + twist(T))``."""
    if X.size != T.size:
        raise ValueError(f"size mismatch: {X.size} vs {T.size}")
    if X.labels != T.labels:
        raise ValueError("X and T must carry the same labels")
    return pfaffian(X + twist(T))


# -- JSON ---------------------------------------------------------------------


def matrix_to_json(M: LabeledSkewMatrix) -> dict:
    return {
        "labels": list(M.labels),
        "upper": [[i, j, str(v)] for (i, j), v in M.upper().items()],
    }


def matrix_from_json(obj: Mapping) -> LabeledSkewMatrix:
    labels = [int(x) for x in obj["labels"]]
    pos = {lab: k + 1 for k, lab in enumerate(labels)}
    upper = {}
    for i, j, value in obj.get("upper", []):
        a, b = pos[int(i)], pos[int(j)]
        v = as_scalar(str(value))
        if a > b:
            a, b, v = b, a, -v
        upper[(a, b)] = v
    return LabeledSkewMatrix.from_upper(labels, upper)


def dumps(M: LabeledSkewMatrix) -> str:
    return json.dumps(matrix_to_json(M))


def loads(text: str) -> LabeledSkewMatrix:
    return matrix_from_json(json.loads(text))
