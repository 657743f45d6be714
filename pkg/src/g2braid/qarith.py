"""Exact and floating arithmetic in the variable q.

Three coefficient rings are supported, each with a small *context* object
that knows how to map Laurent polynomials into it:

* :class:`FormalContext` keeps q as an indeterminate; values are
  :class:`RatFunc` instances over the rationals.
* :class:`CycloContext` sets ``q = zeta_m**e``; values are :class:`CycNumber`.
* :class:`FloatContext` sets q to a complex number; values are ``complex``.

All value types are immutable.  Mixing values from different contexts raises
:class:`~g2braid.errors.IncompatibleValues`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, IncompatibleValues, NotDivisible

__all__ = [
    "LaurentPoly", "RatFunc", "CycNumber", "Q", "qint", "exact_divide",
    "QContext", "FormalContext", "CycloContext", "FloatContext",
    "specialize", "cyclotomic_polynomial", "euler_phi",
]

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q (lists, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p: list, r: list) -> list:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    return _trim(out)


def _psub(p: list, r: list) -> list:
    return _padd(p, [-c for c in r])


def _pmul(p: list, r: list) -> list:
    if not p or not r:
        return []
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(r):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(p: list, d: list) -> tuple[list, list]:
    if not d:
        raise DivisionByZero("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    lead = Fraction(d[-1])
    dd = len(d) - 1
    if len(rem) - 1 < dd:
        return [], _trim(rem)
    quo = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c / lead
        quo[k - dd] = c
        for j in range(dd + 1):
            rem[k - dd + j] -= c * d[j]
    return _trim(quo), _trim(rem[:dd])


def _pmonic(p: list) -> list:
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def _pgcd(a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, (_pmonic(r) if r else [])
    return _pmonic(a) if a else []


def _pegcd_inverse(a: list, m: list) -> list:
    """Inverse of ``a`` modulo ``m`` (which must be coprime to ``a``)."""
    r0, r1 = list(m), list(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        quo, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(quo, s1))
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible")
    inv = [c / r0[0] for c in s0]
    return _pdivmod(inv, m)[1]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """A Laurent polynomial in q with rational coefficients.

    Parameters
    ----------
    terms : mapping of int to rational, optional
        Exponent to coefficient. Zero coefficients are dropped.

    Examples
    --------
    >>> q = LaurentPoly.q()
    >>> (q + q**-1) * (q - q**-1) == q**2 - q**-2
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def _from_dense(cls, shift: int, coeffs: list) -> "LaurentPoly":
        return cls({shift + i: c for i, c in enumerate(coeffs) if c != 0})

    # accessors ------------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the exponent-to-coefficient map."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        """Lowest exponent; raises ValueError on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def _dense(self) -> tuple[int, list]:
        v = self.valuation()
        out = [Fraction(0)] * (self.degree() - v + 1)
        for e, c in self._terms.items():
            out[e - v] = c
        return v, out

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials are units in the Laurent ring")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: Fraction(c) ** n})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_divide(self, other)

    def bar(self) -> "LaurentPoly":
        """Image under the involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Image under q -> q^k."""
        return LaurentPoly({k * e: c for e, c in self._terms.items()})

    def at_one(self) -> Fraction:
        """Value at q = 1."""
        return sum(self._terms.values(), Fraction(0))

    def evaluate(self, x: complex) -> complex:
        return sum(complex(c) * x ** e for e, c in self._terms.items())

    # comparison / display -------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = _frac_str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [[e, _frac_str(self._terms[e])] for e in sorted(self._terms)]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        return cls({int(e): Fraction(c) for e, c in data["terms"]})


def Q() -> LaurentPoly:
    """The indeterminate q."""
    return LaurentPoly.q()


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """Quantum integer ``[n] = (q^n - q^-n)/(q - q^-1)``.

    >>> str(qint(3))
    'q^2 + 1 + q^-2'
    """
    if n < 0:
        return -qint(-n)
    return LaurentPoly({n - 1 - 2 * j: 1 for j in range(n)})


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient ``a / b`` in the Laurent ring.

    Raises
    ------
    NotDivisible
        If ``b`` does not divide ``a``.
    DivisionByZero
        If ``b`` is zero.
    """
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly()
    va, da = a._dense()
    vb, db = b._dense()
    quo, rem = _pdivmod(da, db)
    if rem:
        raise NotDivisible(f"{b} does not divide {a}")
    return LaurentPoly._from_dense(va - vb, quo)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """A reduced quotient of Laurent polynomials.

    The denominator is stored as an ordinary polynomial with nonzero constant
    term equal to 1; all powers of q are moved into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = LaurentPoly._coerce(num)
        den = LaurentPoly.const(1) if den is None else LaurentPoly._coerce(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly.const(1)
            return
        vn, dn = num._dense()
        vd, dd = den._dense()
        if len(dd) > 1:
            g = _pgcd(dn, dd)
            if len(g) > 1:
                dn = _pdivmod(dn, g)[0]
                dd = _pdivmod(dd, g)[0]
        c0 = dd[0]
        dn = [c / c0 for c in dn]
        dd = [c / c0 for c in dd]
        self.num = LaurentPoly._from_dense(vn - vd, dn)
        self.den = LaurentPoly._from_dense(0, dd)

    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RatFunc(other, _reduced=True) if isinstance(other, LaurentPoly) else RatFunc(LaurentPoly.const(other), _reduced=True)
        if isinstance(other, (complex, float, CycNumber)):
            raise IncompatibleValues(f"cannot combine RatFunc with {type(other).__name__}")
        return NotImplemented

    def is_polynomial(self) -> bool:
        return self.den == 1

    def as_laurent(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == 1 and o.den == 1:
            return RatFunc(self.num * o.num, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except IncompatibleValues:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest first."""
    if m < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _pdivmod(num, list(cyclotomic_polynomial(d)))[0]
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta^j for j = 0..m-1 in the power basis."""
    phi = list(cyclotomic_polynomial(m))
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by zeta and reduce with the monic cyclotomic polynomial
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


class CycNumber:
    """An element of the cyclotomic field Q(zeta_m), zeta = exp(2*pi*i/m).

    ``coords`` are coefficients of ``1, zeta, ..., zeta^(phi(m)-1)``.
    """

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords: Iterable[Rational]):
        coords = tuple(Fraction(c) for c in coords)
        phi = euler_phi(m)
        if len(coords) != phi:
            raise ValueError(f"expected {phi} coordinates for order {m}, got {len(coords)}")
        self.m = m
        self.coords = coords

    @classmethod
    def zeta_power(cls, m: int, e: int) -> "CycNumber":
        return cls(m, _power_table(m)[e % m])

    @classmethod
    def from_rational(cls, m: int, c: Rational) -> "CycNumber":
        out = [Fraction(0)] * euler_phi(m)
        out[0] = Fraction(c)
        return cls(m, out)

    @classmethod
    def _from_poly(cls, m: int, poly: list) -> "CycNumber":
        table = _power_table(m)
        phi = euler_phi(m)
        out = [Fraction(0)] * phi
        for j, c in enumerate(poly):
            if c == 0:
                continue
            if j < phi:
                out[j] += c
            else:
                row = table[j % m]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return cls(m, out)

    def _check(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.m != self.m:
                raise IncompatibleValues(f"orders differ: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.m, other)
        if isinstance(other, (complex, float, LaurentPoly, RatFunc)):
            raise IncompatibleValues(f"cannot combine CycNumber with {type(other).__name__}")
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber(self.m, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.m, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber(self.m, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber._from_poly(self.m, _pmul(list(self.coords), list(o.coords)))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        poly = _trim(list(self.coords))
        inv = _pegcd_inverse(poly, [Fraction(c) for c in cyclotomic_polynomial(self.m)])
        out = [Fraction(0)] * euler_phi(self.m)
        for i, c in enumerate(inv):
            out[i] = c
        return CycNumber(self.m, out)

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNumber.from_rational(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        z = cmath.exp(2j * math.pi / self.m)
        return sum(float(c) * z ** i for i, c in enumerate(self.coords))

    def __eq__(self, other):
        try:
            o = self._check(other)
        except IncompatibleValues:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.m, self.coords))

    def __repr__(self):
        terms = [f"{_frac_str(c)}*z^{i}" for i, c in enumerate(self.coords) if c]
        return f"CycNumber(m={self.m}: {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"m": self.m, "coords": [_frac_str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNumber":
        return cls(int(data["m"]), [Fraction(c) for c in data["coords"]])


# ---------------------------------------------------------------------------
# evaluation contexts
# ---------------------------------------------------------------------------

class QContext:
    """Base class for a choice of coefficient ring together with a value of q."""

    kind: str = "abstract"
    exact: bool = True

    def qpow(self, k: int):
        raise NotImplementedError

    def from_laurent(self, p: LaurentPoly):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def zero(self):
        return self.from_int(0)

    def is_zero(self, x) -> bool:
        return x == 0 if not hasattr(x, "is_zero") else x.is_zero()

    def equal(self, a, b) -> bool:
        return self.is_zero(a - b)

    def to_complex(self, x) -> complex:
        raise TypeError(f"{self.kind} values have no complex value")

    def qint(self, n: int):
        return self.from_laurent(qint(n))

    def describe(self) -> str:
        return self.kind


class FormalContext(QContext):
    """q stays an indeterminate; values are :class:`RatFunc`."""

    kind = "formal"
    exact = True

    def qpow(self, k: int) -> RatFunc:
        return RatFunc(LaurentPoly.monomial(k), _reduced=True)

    def from_laurent(self, p: LaurentPoly) -> RatFunc:
        return RatFunc(p, _reduced=True)

    def from_int(self, n: int) -> RatFunc:
        return RatFunc(LaurentPoly.const(n), _reduced=True)

    def __eq__(self, other):
        return isinstance(other, FormalContext)

    def __hash__(self):
        return hash("formal")

    def describe(self) -> str:
        return "generic"


class CycloContext(QContext):
    """``q = zeta_m**e`` with zeta a primitive m-th root of unity."""

    kind = "cyclo"
    exact = True

    def __init__(self, m: int, e: int = 1):
        if m < 1:
            raise ValueError("order must be positive")
        self.m = m
        self.e = e % m

    def qpow(self, k: int) -> CycNumber:
        return CycNumber.zeta_power(self.m, self.e * k)

    def from_laurent(self, p: LaurentPoly) -> CycNumber:
        table = _power_table(self.m)
        out = [Fraction(0)] * euler_phi(self.m)
        for k, c in p.terms.items():
            row = table[(self.e * k) % self.m]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
        return CycNumber(self.m, out)

    def from_int(self, n: int) -> CycNumber:
        return CycNumber.from_rational(self.m, n)

    def to_complex(self, x: CycNumber) -> complex:
        return complex(x)

    @property
    def q_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.e / self.m)

    def __eq__(self, other):
        return isinstance(other, CycloContext) and (self.m, self.e) == (other.m, other.e)

    def __hash__(self):
        return hash(("cyclo", self.m, self.e))

    def describe(self) -> str:
        return f"root:{self.m}:{self.e}"


class FloatContext(QContext):
    """q is a nonzero complex number; comparisons use ``tol``."""

    kind = "float"
    exact = False

    def __init__(self, q: complex, tol: float = 1e-9):
        q = complex(q)
        if q == 0:
            raise ValueError("q must be nonzero")
        self.q = q
        self.tol = tol

    def qpow(self, k: int) -> complex:
        return self.q ** k

    def from_laurent(self, p: LaurentPoly) -> complex:
        return p.evaluate(self.q)

    def from_int(self, n: int) -> complex:
        return complex(n)

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def to_complex(self, x) -> complex:
        return complex(x)

    def __eq__(self, other):
        return isinstance(other, FloatContext) and self.q == other.q and self.tol == other.tol

    def __hash__(self):
        return hash(("float", self.q, self.tol))

    def describe(self) -> str:
        return f"float:{self.q.real!r},{self.q.imag!r}"


def specialize(p: LaurentPoly | RatFunc, ctx: QContext):
    """Evaluate a Laurent polynomial or rational function in ``ctx``.

    Raises
    ------
    DivisionByZero
        If a denominator vanishes at the evaluation point.
    """
    if isinstance(p, RatFunc):
        num = ctx.from_laurent(p.num)
        den = ctx.from_laurent(p.den)
        if ctx.is_zero(den):
            raise DivisionByZero(f"denominator {p.den} vanishes at {ctx.describe()}")
        return num / den
    return ctx.from_laurent(p)
