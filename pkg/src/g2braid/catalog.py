"""Simple representations of the cubic braid quotients K_3 and K_4 as data.

Representations are named by the determinant of a standard generator,
written as a monomial in the three eigenvalues ``l1, l2, l3`` (plus a
primitive cube root of unity ``theta`` for the 9-dimensional family).  Rows
are stored once and closed under permutations of the eigenvalues.

The module also evaluates degeneracy equations at concrete eigenvalues
(in any :class:`~g2braid.qarith.QContext`) and predicts the composition
factors of the 8-dimensional ``B_4`` module ``Hom(V_[2,1], V^{(x)4})``.
"""

from __future__ import annotations

import cmath
import itertools
import json
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AmbiguousCase
from .qarith import CycloContext, CycNumber, FloatContext, QContext

__all__ = [
    "EigenPoly", "K4RepDescriptor", "Subquotient", "DegeneracyCondition", "WCompositionCase",
    "generic_table", "subquotient_table", "degeneracy_conditions", "w_cases",
    "b3_semisimple", "classify_W", "degeneracy_report", "theta_values", "weight_multiplicities",
    "table_json", "IRREDUCIBLE", "PERMUTATIONS",
]

PERMUTATIONS = tuple(itertools.permutations((1, 2, 3)))
IRREDUCIBLE = "irreducible"


# ---------------------------------------------------------------------------
# polynomials in l1, l2, l3 and theta
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenPoly:
    """Integer polynomial in ``l1, l2, l3`` and ``theta``.

    ``terms`` is a tuple of ``(coeff, theta_exp, (e1, e2, e3))``; the theta
    exponent is taken mod 3.
    """

    terms: tuple[tuple[int, int, tuple[int, int, int]], ...]

    @classmethod
    def mono(cls, e1: int = 0, e2: int = 0, e3: int = 0, coeff: int = 1, theta: int = 0) -> "EigenPoly":
        return cls(((coeff, theta % 3, (e1, e2, e3)),))

    @classmethod
    def parse_exps(cls, exps: dict[int, int], coeff: int = 1, theta: int = 0) -> "EigenPoly":
        e = [0, 0, 0]
        for i, k in exps.items():
            e[i - 1] += k
        return cls.mono(*e, coeff=coeff, theta=theta)

    def __add__(self, other: "EigenPoly") -> "EigenPoly":
        return EigenPoly(self.terms + other.terms)

    def __sub__(self, other: "EigenPoly") -> "EigenPoly":
        return EigenPoly(self.terms + tuple((-c, t, e) for c, t, e in other.terms))

    def __mul__(self, other: "EigenPoly") -> "EigenPoly":
        out = []
        for c1, t1, e1 in self.terms:
            for c2, t2, e2 in other.terms:
                out.append((c1 * c2, (t1 + t2) % 3, tuple(a + b for a, b in zip(e1, e2))))
        return EigenPoly(tuple(out)).simplified()

    def __pow__(self, n: int) -> "EigenPoly":
        out = EigenPoly.mono()
        for _ in range(n):
            out = out * self
        return out

    def simplified(self) -> "EigenPoly":
        acc: dict[tuple, int] = {}
        for c, t, e in self.terms:
            acc[(t, e)] = acc.get((t, e), 0) + c
        return EigenPoly(tuple((c, t, e) for (t, e), c in sorted(acc.items()) if c))

    def permute(self, perm: Sequence[int]) -> "EigenPoly":
        """Rename ``l_i`` to ``l_{perm[i-1]}``."""
        out = []
        for c, t, e in self.terms:
            new = [0, 0, 0]
            for i, k in enumerate(e):
                new[perm[i] - 1] += k
            out.append((c, t, tuple(new)))
        return EigenPoly(tuple(out))

    def conj_theta(self) -> "EigenPoly":
        """Replace ``theta`` by ``theta^-1``."""
        return EigenPoly(tuple((c, (-t) % 3, e) for c, t, e in self.terms))

    @property
    def is_monomial(self) -> bool:
        return len(self.simplified().terms) == 1

    @property
    def uses_theta(self) -> bool:
        return any(t for _, t, _ in self.terms)

    @property
    def exponents(self) -> tuple[int, int, int]:
        (c, _, e), = self.simplified().terms
        return e

    def evaluate(self, lams: Sequence, ctx: QContext, theta=None):
        out = ctx.zero()
        for c, t, e in self.terms:
            term = ctx.from_int(c)
            if t:
                if theta is None:
                    raise ValueError("this polynomial needs a value for theta")
                term = term * theta ** t
            for lam, k in zip(lams, e):
                if k:
                    term = term * lam ** k
            out = out + term
        return out

    def __str__(self) -> str:
        parts = []
        for c, t, e in self.terms:
            factors = []
            if t:
                factors.append("theta" if t == 1 else "theta^-1")
            for i, k in enumerate(e, start=1):
                if k:
                    factors.append(f"l{i}" if k == 1 else f"l{i}^{k}")
            body = " ".join(factors) or "1"
            mag = abs(c)
            piece = body if mag == 1 else (f"{mag}" if body == "1" else f"{mag} {body}")
            parts.append(("-" if c < 0 else "+", piece))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, piece in parts[1:]:
            s += f" {sign} {piece}"
        return s

    def __repr__(self) -> str:
        return f"EigenPoly({self})"


def _m(*pairs: tuple[int, int], theta: int = 0) -> EigenPoly:
    """Monomial from ``(index, exponent)`` pairs, e.g. ``_m((1, 2), (3, 1))`` is ``l1^2 l3``."""
    return EigenPoly.parse_exps(dict(pairs), theta=theta)


def _label(det: EigenPoly) -> str:
    return "{" + str(det).replace(" ", "") + "}"


# ---------------------------------------------------------------------------
# generic table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K4RepDescriptor:
    """One generically irreducible representation of ``K_4``.

    Attributes
    ----------
    dim : int
    det : EigenPoly
        Determinant of ``sigma_1``.
    delta2 : EigenPoly
        Scalar by which the full twist acts.
    weights : dict
        ``(i, j) -> multiplicity``: joint eigenvalues of ``sigma_1`` and ``sigma_3``.
    restriction : tuple of EigenPoly
        Determinants of the simple ``K_3`` composition factors on restricting to ``B_3``.
    theta : int
        ``1`` or ``-1`` for the two 9-dimensional representations, ``0`` otherwise.
    """

    dim: int
    det: EigenPoly
    delta2: EigenPoly
    weights: dict
    restriction: tuple[EigenPoly, ...]
    theta: int = 0

    @property
    def label(self) -> str:
        base = _label(self.det)
        return base + ("_theta" if self.theta == 1 else "_theta^-1" if self.theta == -1 else "")

    def permuted(self, perm: Sequence[int]) -> "K4RepDescriptor":
        return K4RepDescriptor(
            self.dim, self.det.permute(perm), self.delta2.permute(perm),
            {(perm[i - 1], perm[j - 1]): c for (i, j), c in self.weights.items()},
            tuple(r.permute(perm) for r in self.restriction), self.theta)

    def key(self) -> tuple:
        return (self.dim, self.det.exponents, self.theta)

    def consistency(self) -> dict[str, bool]:
        """Internal checks of the row; every value should be ``True``.

        * ``weights_dim``: multiplicities add up to ``dim``;
        * ``det_from_weights``: the product of ``l_i`` over weights is ``det``;
        * ``weights_symmetric``: ``(i, j)`` and ``(j, i)`` have equal multiplicity;
        * ``restriction_dim`` and ``restriction_det``: the ``B_3`` factors add up;
        * ``twist_power``: ``delta2^dim == det^12``, since the full twist is
          ``(sigma_1 sigma_2 sigma_3)^4`` and all ``sigma_i`` are conjugate.
        """
        return _consistency(self.dim, self.det, self.delta2, self.weights, self.restriction, None)

    def to_json(self) -> dict:
        return {
            "label": self.label, "dim": self.dim, "det": str(self.det), "delta2": str(self.delta2),
            "weights": [[i, j, c] for (i, j), c in sorted(self.weights.items())],
            "restriction": [_label(r) for r in self.restriction],
        }


def _k3_dim(det: EigenPoly) -> int:
    return sum(det.exponents)


def _det_from_weights(weights: dict) -> EigenPoly:
    e = [0, 0, 0]
    for (i, _), c in weights.items():
        e[i - 1] += c
    return EigenPoly.mono(*e)


def _consistency(dim, det, delta2, weights, restriction, on_variety) -> dict[str, bool]:
    out = {
        "weights_dim": sum(weights.values()) == dim,
        "det_from_weights": _det_from_weights(weights).exponents == det.exponents,
        "weights_symmetric": all(weights.get((j, i)) == c for (i, j), c in weights.items()),
        "restriction_dim": sum(_k3_dim(r) for r in restriction) == dim,
    }
    prod = EigenPoly.mono()
    for r in restriction:
        prod = prod * r
    out["restriction_det"] = prod.exponents == det.exponents
    lhs, rhs = delta2 ** dim, det ** 12
    if on_variety is None:
        out["twist_power"] = (lhs - rhs).simplified().terms == ()
    else:
        out["twist_power"] = on_variety(lhs - rhs)
    return out


def _all_pairs(idx: Sequence[int]) -> dict:
    return {(i, j): 1 for i in idx for j in idx}


def _base_rows() -> list[K4RepDescriptor]:
    l123 = _m((1, 1), (2, 1), (3, 1))
    l12, l13, l23, l1 = _m((1, 1), (2, 1)), _m((1, 1), (3, 1)), _m((2, 1), (3, 1)), _m((1, 1))
    w8 = {(i, j): 1 for i in (1, 2, 3) for j in (1, 2, 3) if i != j}
    w8[(1, 1)] = 2
    rows = [
        K4RepDescriptor(9, _m((1, 3), (2, 3), (3, 3)), _m((1, 4), (2, 4), (3, 4), theta=1), _all_pairs((1, 2, 3)),
                        (l123, l12, l13, l23), theta=1),
        K4RepDescriptor(8, _m((1, 4), (2, 2), (3, 2)), _m((1, 6), (2, 3), (3, 3)), w8, (l123, l12, l13, l1)),
        K4RepDescriptor(6, _m((1, 3), (2, 2), (3, 1)), _m((1, 6), (2, 4), (3, 2)),
                        {(1, 1): 1, (1, 2): 1, (2, 1): 1, (1, 3): 1, (3, 1): 1, (2, 2): 1}, (l123, l12, l1)),
        K4RepDescriptor(3, l123, _m((1, 4), (2, 4), (3, 4)), {(1, 1): 1, (2, 2): 1, (3, 3): 1}, (l123,)),
        K4RepDescriptor(3, _m((1, 2), (2, 1)), _m((1, 8), (2, 4)), {(1, 1): 1, (1, 2): 1, (2, 1): 1}, (l12, l1)),
        K4RepDescriptor(2, l12, _m((1, 6), (2, 6)), {(1, 1): 1, (2, 2): 1}, (l12,)),
        K4RepDescriptor(1, l1, _m((1, 12)), {(1, 1): 1}, (l1,)),
    ]
    nine = rows[0]
    conj = K4RepDescriptor(9, nine.det, nine.delta2.conj_theta(), nine.weights, nine.restriction, theta=-1)
    return rows[:1] + [conj] + rows[1:]


def generic_table(closed: bool = True) -> list[K4RepDescriptor]:
    """Generically irreducible ``K_4`` representations.

    With ``closed=False`` only the seven listed families (plus the second
    choice of ``theta`` for dimension 9) are returned; otherwise every
    representation obtained by permuting the eigenvalues, without repeats.
    """
    base = _base_rows()
    if not closed:
        return base
    seen, out = set(), []
    for row in base:
        for perm in PERMUTATIONS:
            r = row.permuted(perm)
            if r.key() not in seen:
                seen.add(r.key())
                out.append(r)
    return out


# ---------------------------------------------------------------------------
# degeneracy equations and subquotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegeneracyCondition:
    """An equation under which the representation ``family`` can become reducible."""

    family: str
    poly: EigenPoly
    theta: int = 0

    def holds(self, lams: Sequence, ctx: QContext, theta=None) -> bool:
        if self.poly.uses_theta and theta is None:
            return False
        return bool(ctx.is_zero(self.poly.evaluate(lams, ctx, theta)))

    def to_json(self) -> dict:
        return {"family": self.family, "equation": str(self.poly)}


def _eq_families():
    """(family template det, list of equation templates) in index variables i, j, k = 1, 2, 3."""
    i, j, k = 1, 2, 3

    def m(*p, theta=0):
        return _m(*p, theta=theta)

    return [
        (m((i, 1), (j, 1)), [m((i, 2)) - m((i, 1), (j, 1)) + m((j, 2))], 0),
        (m((i, 2), (j, 1)), [m((i, 2)) + m((j, 2))], 0),
        (m((1, 1), (2, 1), (3, 1)), [m((i, 2)) + m((j, 1), (k, 1))], 0),
        (m((i, 3), (j, 2), (k, 1)), [m((i, 1)) + m((k, 1)), m((j, 1)) + m((k, 1)),
                                     m((j, 2)) + m((i, 1), (k, 1)), m((i, 3)) - m((j, 2), (k, 1))], 0),
        (m((i, 4), (j, 2), (k, 2)), [m((i, 2), (j, 1)) - m((k, 3)), m((i, 2), (k, 1)) - m((j, 3)),
                                     m((i, 2)) - m((j, 1), (k, 1), theta=1),
                                     m((i, 2)) - m((j, 1), (k, 1), theta=-1)], 0),
        (m((1, 3), (2, 3), (3, 3)), [m((i, 1)) + m((j, 1), theta=1), m((i, 2)) - m((j, 1), (k, 1), theta=1)], 1),
        (m((1, 3), (2, 3), (3, 3)), [m((i, 1)) + m((j, 1), theta=-1), m((i, 2)) - m((j, 1), (k, 1), theta=-1)], -1),
    ]


def degeneracy_conditions() -> list[DegeneracyCondition]:
    """Every degeneracy equation, expanded over permutations of the indices."""
    out, seen = [], set()
    for det, eqs, th in _eq_families():
        for perm in PERMUTATIONS:
            fam = _label(det.permute(perm)) + ("_theta" if th == 1 else "_theta^-1" if th == -1 else "")
            for eq in eqs:
                p = eq.permute(perm).simplified()
                key = (fam, p.terms)
                if key not in seen:
                    seen.add(key)
                    out.append(DegeneracyCondition(fam, p, th))
    return out


@dataclass(frozen=True)
class Subquotient:
    """A simple ``K_4`` representation that exists only on an equation."""

    dim: int
    notation: str
    det: EigenPoly
    equation: EigenPoly
    delta2: EigenPoly
    weights: dict
    restriction: tuple[EigenPoly, ...]
    theta: int = 0

    def consistency(self, samples: int = 3, seed: int = 0) -> dict[str, bool]:
        """Row checks as for :meth:`K4RepDescriptor.consistency`.

        ``twist_power`` only holds on the defining equation, so it is tested
        at random complex points of that equation.
        """
        points = _variety_points(self.equation, samples, seed)
        ctx = FloatContext(1.0)
        theta = cmath.exp(2j * cmath.pi / 3 * (1 if self.theta >= 0 else -1))

        def on_variety(poly: EigenPoly) -> bool:
            return all(abs(poly.evaluate(p, ctx, theta)) <= 1e-8 * max(1.0, _poly_scale(poly, p)) for p in points)

        return _consistency(self.dim, self.det, self.delta2, self.weights, self.restriction, on_variety)

    def to_json(self) -> dict:
        return {"dim": self.dim, "notation": self.notation, "det": str(self.det),
                "equation": f"{self.equation} = 0", "delta2": str(self.delta2),
                "weights": [[i, j, c] for (i, j), c in sorted(self.weights.items())],
                "restriction": [_label(r) for r in self.restriction]}


def _poly_scale(poly: EigenPoly, point) -> float:
    return max(abs(np.prod([complex(x) ** k for x, k in zip(point, e)])) for _, _, e in poly.terms)


def _variety_points(eq: EigenPoly, count: int, seed: int) -> list[tuple[complex, complex, complex]]:
    """Random points with unit-modulus coordinates on ``eq = 0``.

    The equation is solved for the variable of highest degree among those
    that occur in a single term.
    """
    rng = np.random.default_rng(seed)
    theta = cmath.exp(2j * cmath.pi / 3)
    pts = []
    for _ in range(count):
        lam = [cmath.exp(2j * cmath.pi * rng.random()) for _ in range(3)]
        # solve for a variable that appears in exactly one term
        for var in range(3):
            holders = [t for t in eq.terms if t[2][var]]
            if len(holders) == 1:
                c, t, e = holders[0]
                rest = sum(cc * theta ** tt * np.prod([lam[v] ** ee[v] for v in range(3)])
                           for cc, tt, ee in eq.terms if (cc, tt, ee) != holders[0])
                other = c * theta ** t * np.prod([lam[v] ** e[v] for v in range(3) if v != var])
                lam[var] = (-rest / other) ** (1.0 / e[var])
                break
        pts.append(tuple(lam))
    return pts


def _rename(notation: str, perm: Sequence[int]) -> str:
    """Substitute concrete indices for the placeholders ``li, lj, lk``."""
    return re.sub(r"l([ijk])", lambda m: f"l{perm['ijk'.index(m.group(1))]}", notation)


def subquotient_table(closed: bool = True) -> list[Subquotient]:
    """New simple representations that appear on one degeneracy equation."""
    i, j, k = 1, 2, 3
    l123 = _m((1, 1), (2, 1), (3, 1))
    base = [
        Subquotient(2, "{li lj}*", _m((i, 1), (j, 1)), _m((i, 2)) + _m((j, 2)), _m((i, 8), (j, 4)),
                    {(i, j): 1, (j, i): 1}, (_m((i, 1), (j, 1)),)),
        Subquotient(3, "{lj|li lk}", l123, _m((i, 1)) + _m((k, 1)), _m((i, 6), (j, 4), (k, 2)),
                    {(j, j): 1, (i, k): 1, (k, i): 1}, (l123,)),
        Subquotient(4, "{li^2 lj lk}", _m((i, 2), (j, 1), (k, 1)), _m((j, 1)) + _m((k, 1)),
                    _m((i, 6), (j, 4), (k, 2)), {(i, j): 1, (j, i): 1, (i, k): 1, (k, i): 1}, (l123, _m((i, 1)))),
        Subquotient(5, "{li^2 lj^2 lk}", _m((i, 2), (j, 2), (k, 1)), _m((i, 3)) - _m((j, 2), (k, 1)),
                    _m((i, 6), (j, 4), (k, 2)), {(j, j): 1, (i, j): 1, (j, i): 1, (i, k): 1, (k, i): 1},
                    (l123, _m((i, 1), (j, 1)))),
        Subquotient(7, "{li^3 lj^2 lk^2}", _m((i, 3), (j, 2), (k, 2)), _m((i, 2)) - _m((j, 1), (k, 1), theta=1),
                    _m((i, 6), (j, 3), (k, 3)),
                    {(i, i): 1, (i, j): 1, (j, i): 1, (i, k): 1, (k, i): 1, (j, k): 1, (k, j): 1},
                    (l123, _m((i, 1), (j, 1)), _m((i, 1), (k, 1))), theta=1),
    ]
    seven = base[-1]
    base.append(Subquotient(7, seven.notation, seven.det, seven.equation.conj_theta(), seven.delta2,
                            seven.weights, seven.restriction, theta=-1))
    if not closed:
        return base
    out, seen = [], set()
    for row in base:
        for perm in PERMUTATIONS:
            r = Subquotient(row.dim, _rename(row.notation, perm), row.det.permute(perm), row.equation.permute(perm).simplified(),
                            row.delta2.permute(perm),
                            {(perm[a - 1], perm[b - 1]): c for (a, b), c in row.weights.items()},
                            tuple(x.permute(perm) for x in row.restriction), row.theta)
            key = (r.dim, r.equation.terms, tuple(sorted(r.weights)))
            if key not in seen:
                seen.add(key)
                out.append(r)
    return out


# ---------------------------------------------------------------------------
# composition cases for Hom(V_[2,1], V^(x)4)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WCompositionCase:
    """A nontrivial composition series of the 8-dimensional module.

    ``factors`` holds ``(dim, det)`` pairs with a display label.
    """

    case: int
    relations: tuple[EigenPoly, ...]
    factors: tuple[tuple[int, EigenPoly, str], ...]

    def holds(self, lams: Sequence, ctx: QContext, thetas: Sequence) -> bool:
        if not any(r.uses_theta for r in self.relations):
            return all(ctx.is_zero(r.evaluate(lams, ctx)) for r in self.relations)
        for th in thetas:
            for rels in (self.relations, tuple(r.conj_theta() for r in self.relations)):
                if all(ctx.is_zero(r.evaluate(lams, ctx, th)) for r in rels):
                    return True
        return False

    def consistency(self) -> dict[str, bool]:
        prod = EigenPoly.mono()
        for _, det, _ in self.factors:
            prod = prod * det
        return {
            "dim_sum": sum(d for d, _, _ in self.factors) == 8,
            "det_product": prod.exponents == (4, 2, 2),
        }

    def to_json(self) -> dict:
        return {"case": self.case, "relations": [str(r) for r in self.relations],
                "factors": [label for _, _, label in self.factors]}


def w_cases() -> list[WCompositionCase]:
    r1 = _m((2, 3)) - _m((1, 2), (3, 1))
    r2 = _m((1, 2)) - _m((2, 1), (3, 1), theta=1)
    r3b = _m((3, 3)) - _m((1, 2), (2, 1))
    f_5 = (5, _m((1, 2), (2, 2), (3, 1)), "{l1^2|l2^2 l3}")
    f_113 = (3, _m((1, 2), (3, 1)), "{l1^2 l3}")
    f_112 = (3, _m((1, 2), (2, 1)), "{l1^2 l2}")
    f_1 = (1, _m((1, 1)), "{l1}")
    return [
        WCompositionCase(1, (r1,), (f_5, f_113)),
        WCompositionCase(2, (r2,), ((7, _m((1, 3), (2, 2), (3, 2)), "{l1^3 l2^2 l3^2}"), f_1)),
        WCompositionCase(3, (r1, r3b, _m((2, 2)) + _m((3, 2))),
                         (f_112, f_113, (2, _m((2, 1), (3, 1)), "{l2 l3}*"))),
        WCompositionCase(4, (r1, r3b, _m((2, 1)) + _m((3, 1))),
                         ((3, _m((1, 1), (2, 1), (3, 1)), "{l1|l2 l3}"), (2, _m((1, 1), (2, 1)), "{l1 l2}*"),
                          (2, _m((1, 1), (3, 1)), "{l1 l3}*"), f_1)),
        WCompositionCase(5, (r1, r2, _m((1, 2)) + _m((3, 2))),
                         (f_5, (2, _m((1, 1), (3, 1)), "{l1 l3}*"), f_1)),
        WCompositionCase(6, (r1, r2, _m((1, 1)) + _m((3, 1))),
                         ((4, _m((2, 2), (1, 1), (3, 1)), "{l2^2 l1 l3}"), f_113, f_1)),
    ]


# ---------------------------------------------------------------------------
# evaluation at concrete eigenvalues
# ---------------------------------------------------------------------------

def theta_values(ctx: QContext) -> list:
    """Primitive cube roots of unity available in the context's field.

    Empty for the formal context and for cyclotomic fields of order prime
    to 3; an equation involving ``theta`` then cannot hold, because it would
    put ``theta`` in the field.
    """
    if isinstance(ctx, FloatContext):
        return [cmath.exp(2j * cmath.pi / 3), cmath.exp(-2j * cmath.pi / 3)]
    if isinstance(ctx, CycloContext) and ctx.m % 3 == 0:
        return [CycNumber.zeta_power(ctx.m, ctx.m // 3), CycNumber.zeta_power(ctx.m, 2 * ctx.m // 3)]
    return []


def b3_semisimple(l1, l2, l3, ctx: QContext) -> tuple[bool, list[str]]:
    """Whether ``K_3`` is semisimple at these eigenvalues, with the vanishing conditions."""
    lams = (l1, l2, l3)
    failed = []
    for i, j in itertools.combinations((1, 2, 3), 2):
        checks = [(_m((i, 1)) - _m((j, 1))), _m((i, 2)) - _m((i, 1), (j, 1)) + _m((j, 2))]
        for poly in checks:
            if ctx.is_zero(poly.evaluate(lams, ctx)):
                failed.append(f"{poly} = 0")
    for i, k in itertools.permutations((1, 2, 3), 2):
        poly = _m((i, 2)) + _m((i, 1), (k, 1))
        if ctx.is_zero(poly.evaluate(lams, ctx)):
            failed.append(f"{poly} = 0")
    return (not failed, failed)


def classify_W(l1, l2, l3, ctx: QContext) -> WCompositionCase | str:
    """Composition type of the 8-dimensional module at these eigenvalues.

    Relation sets of the cases are nested (case 3 contains case 1's
    relation, for instance), so the most specific satisfied case is
    returned.  Returns :data:`IRREDUCIBLE` when no case applies.

    Raises
    ------
    ValueError
        If two eigenvalues coincide.
    AmbiguousCase
        If two satisfied cases are not nested in each other.
    """
    lams = (l1, l2, l3)
    for a, b in itertools.combinations(lams, 2):
        if ctx.equal(a, b):
            raise ValueError("eigenvalues must be mutually distinct")
    thetas = theta_values(ctx)
    hits = [c for c in w_cases() if c.holds(lams, ctx, thetas)]
    if not hits:
        return IRREDUCIBLE

    def rel_keys(c):
        return {r.simplified().terms for r in c.relations}

    maximal = [c for c in hits if not any(rel_keys(c) < rel_keys(d) for d in hits)]
    if len(maximal) > 1:
        raise AmbiguousCase(f"cases {[c.case for c in maximal]} hold simultaneously")
    return maximal[0]


def degeneracy_report(l1, l2, l3, ctx: QContext) -> dict:
    """Vanishing degeneracy equations and the subquotients they allow.

    Returns ``{"families": [{"representation", "vanished"}...],
    "subquotients": [...]}``; both lists are empty at a generic point.
    """
    lams = (l1, l2, l3)
    thetas = theta_values(ctx)
    by_family: dict[str, list[str]] = {}
    for cond in degeneracy_conditions():
        if cond.poly.uses_theta:
            ok = any(cond.holds(lams, ctx, th) for th in thetas[:1])
        else:
            ok = cond.holds(lams, ctx)
        if ok:
            by_family.setdefault(cond.family, []).append(f"{cond.poly} = 0")
    subs = []
    for sq in subquotient_table():
        th = thetas[0] if thetas else None
        if sq.equation.uses_theta and th is None:
            continue
        if ctx.is_zero(sq.equation.evaluate(lams, ctx, th)):
            subs.append(sq.to_json())
    return {"families": [{"representation": f, "vanished": v} for f, v in by_family.items()],
            "subquotients": subs}


def weight_multiplicities(s1: np.ndarray, s3: np.ndarray, eigenvalues: Sequence[complex],
                          tol: float = 1e-7) -> dict[tuple[int, int], int]:
    """Joint eigenspace dimensions of two commuting matrices.

    ``eigenvalues[i-1]`` is the value labelled ``i``.  Assumes both matrices
    are diagonalizable with spectrum inside ``eigenvalues``.
    """
    d = s1.shape[0]
    eye = np.eye(d)

    def proj(S, idx):
        P = eye.astype(complex)
        for j, lam in enumerate(eigenvalues, start=1):
            if j != idx:
                P = P @ (S - lam * eye) / (eigenvalues[idx - 1] - lam)
        return P

    out = {}
    n = len(eigenvalues)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            P = proj(s1, i) @ proj(s3, j)
            r = int(np.linalg.matrix_rank(P, tol=tol * max(1.0, np.abs(P).max())))
            if r:
                out[(i, j)] = r
    return out


def table_json() -> str:
    """All tables, closed under permutations, as JSON text."""
    return json.dumps({
        "generic": [r.to_json() for r in generic_table()],
        "degeneracy": [c.to_json() for c in degeneracy_conditions()],
        "subquotients": [s.to_json() for s in subquotient_table()],
        "w_cases": [c.to_json() for c in w_cases()],
    }, indent=2)
