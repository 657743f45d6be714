"""Quantum dimensions of simple G2 modules.

The q-dimension of ``V_[mu1,mu2]`` is the product of six quantum integers
divided by ``[1][5][4][6][3][9]``; the quotient is a Laurent polynomial in q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from .errors import DivisionByZero, InadmissibleQ, Mismatch
from .fusion import alcove_weights, tensor_adjoint, tensor_V
from .lattice import GENERIC, L1, L2, ZERO, LevelRule, Weight, dominant_weights
from .qarith import (
    CycloContext, FormalContext, LaurentPoly, QContext, exact_divide, qint,
)

__all__ = [
    "numerator_factors", "DENOMINATOR_FACTORS", "qdim_laurent", "qdim", "classical_dim",
    "vanishing_scan", "dim_recursion_check", "admissible_q", "QAdmissibility", "RecursionReport",
]

DENOMINATOR_FACTORS = (1, 5, 4, 6, 3, 9)


def numerator_factors(mu: Weight) -> tuple[int, ...]:
    """Arguments of the six quantum integers in the numerator."""
    m1, m2 = mu.young
    return (m1 - m2 + 1, 2 * m1 + m2 + 5, m1 + 2 * m2 + 4, 3 * m1 + 6, 3 * m2 + 3, 3 * (m1 + m2) + 9)


def _prod(polys) -> LaurentPoly:
    return reduce(lambda x, y: x * y, polys, LaurentPoly.const(1))


@lru_cache(maxsize=None)
def qdim_laurent(mu: Weight) -> LaurentPoly:
    """Exact q-dimension as a Laurent polynomial.

    >>> str(qdim_laurent(Weight(1, 0)))
    'q^10 + q^8 + q^2 + 1 + q^-2 + q^-8 + q^-10'
    """
    num = _prod(qint(n) for n in numerator_factors(mu))
    den = _prod(qint(n) for n in DENOMINATOR_FACTORS)
    return exact_divide(num, den)


def qdim(mu: Weight, ctx: QContext | None = None, method: str = "laurent"):
    """q-dimension of ``V_mu`` evaluated in ``ctx`` (formal by default).

    Parameters
    ----------
    method : {"laurent", "quotient"}
        ``"laurent"`` specializes the exact Laurent polynomial and is always
        defined.  ``"quotient"`` evaluates numerator and denominator factors
        separately and raises :class:`DivisionByZero` when a denominator
        factor vanishes at the chosen root of unity.
    """
    ctx = ctx or FormalContext()
    if method == "laurent":
        return ctx.from_laurent(qdim_laurent(mu))
    if method != "quotient":
        raise ValueError(f"unknown method {method!r}")
    num = ctx.one()
    for n in numerator_factors(mu):
        num = num * ctx.qint(n)
    den = ctx.one()
    for n in DENOMINATOR_FACTORS:
        f = ctx.qint(n)
        if ctx.is_zero(f):
            raise DivisionByZero(f"[{n}] vanishes at {ctx.describe()}")
        den = den * f
    return num / den


def classical_dim(mu: Weight) -> int:
    """Dimension of the classical module: every ``[n]`` replaced by ``n``."""
    num = math.prod(numerator_factors(mu))
    den = math.prod(DENOMINATOR_FACTORS)
    value = Fraction(num, den)
    assert value.denominator == 1
    return int(value)


def vanishing_scan(ell: int, maxdeg: int, e: int = 1) -> list[tuple[Weight, bool]]:
    """Which ``qdim(mu)`` vanish when ``q**2`` is a primitive ``ell``-th root.

    Uses ``q = zeta_{2 ell}**e`` and exact cyclotomic arithmetic for every
    dominant ``mu`` with ``mu1 + mu2 <= maxdeg``.
    """
    if math.gcd(e, ell) != 1:
        raise InadmissibleQ(f"exponent {e} does not give q^2 of order {ell}")
    ctx = CycloContext(2 * ell, e)
    return [(mu, qdim(mu, ctx).is_zero()) for mu in dominant_weights(maxdeg)]


@dataclass(frozen=True)
class QAdmissibility:
    """Which values of q a level rule allows.

    For a level, ``q = zeta_m**e`` with ``m = 2*(k+12)`` and ``e`` in
    ``exponents``; then ``q**2`` is a primitive ``(k+12)``-th root of unity.
    For the generic rule ``q**2`` must not be a root of unity.
    """

    rule: LevelRule
    m: int | None = None
    exponents: tuple[int, ...] = ()

    def accepts(self, ctx: QContext, max_order: int = 240) -> bool:
        if self.rule.k is None:
            if isinstance(ctx, FormalContext):
                return True
            if isinstance(ctx, CycloContext):
                return False
            q2 = ctx.q ** 2
            if abs(abs(q2) - 1) > ctx.tol:
                return True
            ang = cmath.phase(q2) / (2 * math.pi)
            return all(abs(ang * n - round(ang * n)) > 1e-9 for n in range(1, max_order + 1))
        ell = self.rule.k + 12
        if isinstance(ctx, FormalContext):
            return False
        if isinstance(ctx, CycloContext):
            # q = zeta_M^e; q^2 has order M / gcd(2e, M)
            order = ctx.m // math.gcd(2 * ctx.e, ctx.m)
            return order == ell
        q2 = ctx.q ** 2
        return any(abs(q2 - cmath.exp(2j * math.pi * j / ell)) <= 1e-9
                   for j in range(1, ell) if math.gcd(j, ell) == 1)

    def require(self, ctx: QContext) -> None:
        if not self.accepts(ctx):
            raise InadmissibleQ(f"q = {ctx.describe()} is not admissible for {self.rule}")

    def to_json(self) -> dict:
        if self.rule.k is None:
            return {"rule": "generic", "condition": "q^2 is not a root of unity"}
        return {"rule": self.rule.k, "m": self.m, "q2_order": self.rule.k + 12,
                "exponents": list(self.exponents)}


def admissible_q(rule: LevelRule) -> QAdmissibility:
    """Admissible q for ``rule``: primitive ``(k+12)``-th roots for ``q**2`` at a level."""
    if rule.k is None:
        return QAdmissibility(rule)
    ell = rule.k + 12
    m = 2 * ell
    return QAdmissibility(rule, m, tuple(e for e in range(1, m) if math.gcd(e, ell) == 1))


@dataclass
class RecursionReport:
    rule: LevelRule
    checked: list[Weight] = field(default_factory=list)
    boundary_zero: list[Weight] = field(default_factory=list)
    nonzero_alcove: list[Weight] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rule": str(self.rule),
            "checked": [w.to_json() for w in self.checked],
            "boundary_zero": [w.to_json() for w in self.boundary_zero],
            "nonzero_alcove": [w.to_json() for w in self.nonzero_alcove],
        }


def _boundary(rule: LevelRule, maxdeg: int) -> list[Weight]:
    """Weights on the first removed row just outside the alcove."""
    k = rule.k
    out = []
    for w in dominant_weights(maxdeg):
        m1, m2 = w.young
        if k % 3 == 0 and 3 * (m1 + m2) == k + 3:
            out.append(w)
        elif k % 3 != 0 and 2 * m1 + m2 == k + 7:
            out.append(w)
    return out


def dim_recursion_check(rule: LevelRule = GENERIC, maxdeg: int = 6, ctx: QContext | None = None) -> RecursionReport:
    """Rebuild every ``d_mu`` from ``d_[1,0]`` and ``d_[1,1]`` and compare with :func:`qdim`.

    Each weight ``lam`` is written as the top summand of ``V_mu (x) V_[1,1]``
    (when ``lam`` has a ``L2`` component) or of ``V_mu (x) V``, so that
    ``d_lam = d_mu * d_gen - sum(other summands)``.  At a level, the first
    row of weights outside the alcove must have dimension exactly zero and
    every alcove weight a nonzero one.

    Raises
    ------
    Mismatch
        With the offending weight as witness.
    """
    ctx = ctx or FormalContext()
    if rule.k is not None:
        admissible_q(rule).require(ctx)
    d: dict[Weight, object] = {ZERO: ctx.one(), L1: qdim(L1, ctx), L2: qdim(L2, ctx)}
    report = RecursionReport(rule)
    for lam in dominant_weights(maxdeg):
        if lam not in d:
            if lam.b > 0:
                lower, gen, expansion = Weight(lam.a, lam.b - 1), L2, tensor_adjoint(Weight(lam.a, lam.b - 1))
            else:
                lower, gen, expansion = Weight(lam.a - 1, 0), L1, tensor_V(Weight(lam.a - 1, 0))
            value = d[lower] * d[gen]
            for w, c in expansion.items():
                if w != lam:
                    value = value - d[w] * ctx.from_int(c)
            d[lam] = value
        if not ctx.equal(d[lam], qdim(lam, ctx)):
            raise Mismatch(f"recursion and closed formula disagree at {lam}", witness=lam)
        report.checked.append(lam)
    if rule.k is not None:
        for w in _boundary(rule, maxdeg):
            if not ctx.is_zero(qdim(w, ctx)):
                raise Mismatch(f"boundary weight {w} has nonzero dimension", witness=w)
            report.boundary_zero.append(w)
        for w in alcove_weights(rule):
            if ctx.is_zero(qdim(w, ctx)):
                raise Mismatch(f"alcove weight {w} has zero dimension", witness=w)
            report.nonzero_alcove.append(w)
    return report
