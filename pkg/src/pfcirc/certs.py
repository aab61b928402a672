"""Degree-bounded ideal membership certificates by exact linear algebra.

A certificate for ``target in <g_1, ..., g_m>`` is a list of multipliers
with ``sum_i m_i g_i = target``.  Multipliers of degree at most
``D - deg(g_i)`` are found by solving the Macaulay linear system over Q.

Two reductions keep the system small.  Generators that are single
variables are eliminated first (:func:`eliminate_linears`).  Then every
rational grading under which all generators and the target are
homogeneous is detected, and only multiplier monomials of the matching
degree are kept: taking homogeneous components of any certificate gives
one of that shape, so nothing is lost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import Matrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .polyq import Exp, PolyQ

DEFAULT_LADDER = (8, 10, 12)


@dataclass
class Certificate:
    target: PolyQ
    gens: list[PolyQ]
    multipliers: list[tuple[int, PolyQ]]
    degree: int
    stats: dict = field(default_factory=dict)

    def combination(self) -> PolyQ:
        total = PolyQ.zero(self.target.n)
        for i, m in self.multipliers:
            total = total + m * self.gens[i]
        return total

    def verify(self) -> bool:
        return self.combination() == self.target

    @property
    def size(self) -> int:
        """Total number of multiplier terms."""
        return sum(len(m.terms) for _, m in self.multipliers)

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "variables": self.target.n,
            "degree_bound": self.degree,
            "target": self.target.to_json(),
            "generators": [g.to_json() for g in self.gens],
            "multipliers": [{"generator": i, "poly": m.to_json()} for i, m in self.multipliers],
            "readable": [
                {"generator": i, "multiplier": m.to_string(names)} for i, m in self.multipliers
            ],
        }


@dataclass(frozen=True)
class NotFound:
    """No certificate with multipliers inside the degree bound (not a proof of non-membership)."""

    degree: int
    unknowns: int
    equations: int

    def __bool__(self) -> bool:
        return False


# -- gradings ----------------------------------------------------------------------


def homogenizing_gradings(polys: Sequence[PolyQ]) -> list[list[Fraction]]:
    """Basis of weight vectors making every polynomial homogeneous."""
    n = polys[0].n
    rows = []
    for p in polys:
        exps = list(p.terms)
        for e in exps[1:]:
            rows.append([a - b for a, b in zip(e, exps[0])])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = Matrix(rows).nullspace()
    out = []
    for v in basis:
        out.append([Fraction(int(x.p), int(x.q)) for x in v])
    return out


def _weight(W, exp):
    return tuple(sum(w[i] * a for i, a in enumerate(exp) if a) for w in W)


def _monomials(variables: Sequence[int], n: int, max_degree: int):
    """All exponent vectors of degree <= max_degree supported on ``variables``."""
    variables = list(variables)
    k = len(variables)
    exp = [0] * n

    def rec(pos, remaining):
        if pos == k:
            yield tuple(exp)
            return
        v = variables[pos]
        for a in range(remaining + 1):
            exp[v] = a
            yield from rec(pos + 1, remaining - a)
        exp[v] = 0

    if max_degree < 0:
        return
    yield from rec(0, max_degree)


# -- solving ----------------------------------------------------------------------------


def _solve(columns: list[dict[Exp, Fraction]], rhs: dict[Exp, Fraction]):
    rows_index: dict[Exp, int] = {}
    for col in columns:
        for e in col:
            rows_index.setdefault(e, len(rows_index))
    for e in rhs:
        if e not in rows_index:
            rows_index[e] = len(rows_index)
    m, ncols = len(rows_index), len(columns)
    data: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for e, c in col.items():
            data.setdefault(rows_index[e], {})[j] = QQ(c.numerator, c.denominator)
    for e, c in rhs.items():
        data.setdefault(rows_index[e], {})[ncols] = QQ(c.numerator, c.denominator)
    A = DomainMatrix(data, (m, ncols + 1), QQ)
    R, pivots = A.rref()
    if ncols in pivots:
        return None, m
    R = R.to_sdm()
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        row = R.get(r, {})
        val = row.get(ncols, QQ(0)) / row[p]
        x[p] = Fraction(int(val.numerator), int(val.denominator))
    return x, m


def membership_certificate(
    target: PolyQ,
    gens: Sequence[PolyQ],
    D: int,
    use_gradings: bool = True,
) -> Certificate | NotFound:
    """Search for multipliers with ``deg(m_i g_i) <= D``; the result is verified."""
    gens = list(gens)
    n = target.n
    if gens and D < max(g.degree() for g in gens):
        raise ValueError("degree bound below the largest generator degree")
    variables = sorted(set().union(target.support_variables(), *(g.support_variables() for g in gens)))
    W = homogenizing_gradings([target] + gens) if use_gradings else []
    t_weight = _weight(W, next(iter(target.terms))) if target.terms else None

    columns: list[dict[Exp, Fraction]] = []
    owners: list[tuple[int, Exp]] = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        g_weight = _weight(W, next(iter(g.terms)))
        for mu in _monomials(variables, n, D - g.degree()):
            if W and t_weight is not None:
                w = _weight(W, mu)
                if tuple(a + b for a, b in zip(w, g_weight)) != t_weight:
                    continue
            col = {tuple(a + b for a, b in zip(mu, e)): c for e, c in g.terms.items()}
            columns.append(col)
            owners.append((i, mu))
    if not columns:
        return NotFound(D, 0, len(target.terms))
    x, m = _solve(columns, target.terms)
    if x is None:
        return NotFound(D, len(columns), m)
    mult: dict[int, dict[Exp, Fraction]] = {}
    for (i, mu), c in zip(owners, x):
        if c:
            mult.setdefault(i, {})[mu] = c
    cert = Certificate(
        target,
        gens,
        [(i, PolyQ(n, t)) for i, t in sorted(mult.items())],
        D,
        {"unknowns": len(columns), "equations": m, "gradings": len(W)},
    )
    if not cert.verify():
        raise AssertionError("linear solve produced an invalid certificate")
    return cert


# -- eliminating variables ---------------------------------------------------------------


@dataclass(frozen=True)
class LinearElimination:
    """Record of eliminated single-variable generators."""

    original: tuple[PolyQ, ...]
    linear: tuple[tuple[int, int, Fraction], ...]  # (generator index, variable, coefficient)
    kept: tuple[int, ...]  # original indices of the reduced generators
    reduced: tuple[PolyQ, ...]

    @property
    def variables(self) -> list[int]:
        return [v for _, v, _ in self.linear]

    def reduce(self, p: PolyQ) -> PolyQ:
        return p.substitute_zero(self.variables)

    def lift(self, cert: Certificate, target: PolyQ) -> Certificate:
        """Certificate over the original generators from one over the reduced ones."""
        n = target.n
        mult: dict[int, PolyQ] = {}
        for j, m in cert.multipliers:
            i = self.kept[j]
            mult[i] = mult.get(i, PolyQ.zero(n)) + m
        residual = target
        for i, m in mult.items():
            residual = residual - m * self.original[i]
        var_owner = {v: (i, c) for i, v, c in self.linear}
        extra: dict[int, dict[Exp, Fraction]] = {}
        for e, c in residual.terms.items():
            v = next((v for v in self.variables if e[v]), None)
            if v is None:
                raise AssertionError("residual term outside the eliminated ideal")
            i, coef = var_owner[v]
            q = list(e)
            q[v] -= 1
            extra.setdefault(i, {})[tuple(q)] = c / coef
        for i, terms in extra.items():
            mult[i] = mult.get(i, PolyQ.zero(n)) + PolyQ(n, terms)
        lifted = Certificate(
            target,
            list(self.original),
            [(i, m) for i, m in sorted(mult.items()) if not m.is_zero()],
            cert.degree,
            dict(cert.stats, eliminated=len(self.linear)),
        )
        if not lifted.verify():
            raise AssertionError("lifted certificate does not verify")
        return lifted


def eliminate_linears(gens: Sequence[PolyQ]) -> LinearElimination:
    """Set every single-variable generator to zero in the others."""
    gens = list(gens)
    linear = []
    for i, g in enumerate(gens):
        lv = g.linear_variable()
        if lv is not None:
            linear.append((i, lv[0], lv[1]))
    lin_idx = {i for i, _, _ in linear}
    vars_ = [v for _, v, _ in linear]
    kept, reduced = [], []
    for i, g in enumerate(gens):
        if i in lin_idx:
            continue
        r = g.substitute_zero(vars_)
        kept.append(i)
        reduced.append(r)
    return LinearElimination(tuple(gens), tuple(linear), tuple(kept), tuple(reduced))


def certificate_with_elimination(target: PolyQ, gens: Sequence[PolyQ], D: int) -> Certificate | NotFound:
    elim = eliminate_linears(gens)
    reduced_target = elim.reduce(target)
    cert = membership_certificate(reduced_target, list(elim.reduced), D)
    if not cert:
        return cert
    return elim.lift(cert, target)


def find_certificate(
    target: PolyQ, gens: Sequence[PolyQ], ladder: Sequence[int] = DEFAULT_LADDER
) -> tuple[Certificate | NotFound, list[dict]]:
    """Try each degree bound in turn; returns the outcome and a log of attempts."""
    log = []
    result: Certificate | NotFound = NotFound(-1, 0, 0)
    for D in ladder:
        result = certificate_with_elimination(target, gens, D)
        if result:
            log.append({"degree": D, "found": True, **result.stats})
            break
        log.append({"degree": D, "found": False, "unknowns": result.unknowns, "equations": result.equations})
    return result, log


# -- the four-qubit system ----------------------------------------------------------------


def x_names() -> list[str]:
    return [f"x{k}" for k in range(1, 17)]


def i_plus_j_system() -> tuple[PolyQ, list[PolyQ], list[str]]:
    """Target ``1`` and the generators of ``I + J`` in ``x1..x16``.

    ``I`` holds the four invariants minus their SWAP values; ``J`` holds the
    odd-support coordinates and the arity-4 quadric ``a_{} a_{1234} -
    (a_12 a_34 - a_13 a_24 + a_23 a_14)`` with ``a_I = x_{1 + mask(I)}``.
    """
    from .invariants import det_B, det_L, det_M, hyperdeterminant_H

    n = 16
    x = PolyQ.variables(n)
    gens = [hyperdeterminant_H(x) - 2, det_L(x) - 1, det_M(x), det_B(x)]
    names = ["H - 2", "detL - 1", "detM", "detB"]
    for mask in range(16):
        if bin(mask).count("1") % 2:
            gens.append(x[mask])
            names.append(f"x{mask + 1}")

    def a(*legs):
        m = 0
        for leg in legs:
            m |= 1 << (leg - 1)
        return x[m]

    quadric = a() * a(1, 2, 3, 4) - (a(1, 2) * a(3, 4) - a(1, 3) * a(2, 4) + a(2, 3) * a(1, 4))
    gens.append(quadric)
    names.append("quadric")
    return PolyQ.constant(n, 1), gens, names


def certify_i_plus_j(ladder: Sequence[int] = DEFAULT_LADDER):
    target, gens, _ = i_plus_j_system()
    return find_certificate(target, gens, ladder)


def dump_certificate(cert: Certificate, gen_names: Sequence[str] | None = None) -> str:
    data = cert.to_json(x_names() if cert.target.n == 16 else None)
    if gen_names is not None:
        data["generator_names"] = list(gen_names)
    return json.dumps(data, indent=1)
