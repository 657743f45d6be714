"""The G2 weight lattice in epsilon coordinates.

A weight is stored by its fundamental coordinates ``(a, b)`` meaning
``a*L1 + b*L2``.  The epsilon triple is ``(a+b, b, -a-2b)``; its first two
entries ``[mu1, mu2]`` are the labels used in every printed or serialized
form (so ``L1 = [1,0]``, ``L2 = [1,1]``, ``2*L1 = [2,0]``).

Roots live in the plane ``x1 + x2 + x3 = 0`` with the standard dot product.
The short roots are the six vectors ``e_i - e_j``; the long roots are the
six vectors ``+-(2 e_i - e_j - e_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional

from .errors import NotInAlcove

__all__ = [
    "Weight", "LevelRule", "GENERIC", "level", "RHO", "SHORT_ROOTS", "LONG_ROOTS",
    "V_WEIGHTS", "ADJOINT_WEIGHTS", "inner", "casimir", "in_alcove", "require_alcove",
    "straighten", "affine_reflect", "dominant_weights", "ZERO", "L1", "L2",
]

Triple = tuple[int, int, int]


def inner(u: Triple, v: Triple) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _add(u: Triple, v: Triple) -> Triple:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def _sub(u: Triple, v: Triple) -> Triple:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


@dataclass(frozen=True, order=False)
class Weight:
    """Dominant integral weight ``a*L1 + b*L2``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"weight ({self.a},{self.b}) is not dominant")

    @classmethod
    def from_young(cls, mu1: int, mu2: int) -> "Weight":
        """Build from the epsilon labels ``[mu1, mu2]`` (requires mu1 >= mu2 >= 0)."""
        return cls(mu1 - mu2, mu2)

    @classmethod
    def from_eps(cls, v: Triple) -> "Weight":
        if sum(v) != 0:
            raise ValueError(f"{v} is not in the weight plane")
        return cls(v[0] - v[1], v[1])

    @property
    def eps(self) -> Triple:
        return (self.a + self.b, self.b, -self.a - 2 * self.b)

    @property
    def young(self) -> tuple[int, int]:
        return (self.a + self.b, self.b)

    @property
    def size(self) -> int:
        """Filtration degree ``mu1 + mu2``."""
        return self.a + 2 * self.b

    def sort_key(self) -> tuple[int, int, int]:
        return (self.size, self.a, self.b)

    def __lt__(self, other: "Weight") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        m1, m2 = self.young
        return f"[{m1},{m2}]"

    def __repr__(self) -> str:
        return f"Weight{self}"

    def to_json(self) -> list[int]:
        return list(self.young)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"mu1,mu2"`` or ``"[mu1,mu2]"``."""
        body = text.strip().strip("[]() ")
        parts = [p for p in body.replace(" ", "").split(",") if p]
        if len(parts) != 2:
            raise ValueError(f"cannot parse weight {text!r}; expected 'mu1,mu2'")
        mu1, mu2 = int(parts[0]), int(parts[1])
        if not (mu1 >= mu2 >= 0):
            raise ValueError(f"[{mu1},{mu2}] is not dominant (need mu1 >= mu2 >= 0)")
        return cls.from_young(mu1, mu2)


ZERO = Weight(0, 0)
L1 = Weight(1, 0)
L2 = Weight(0, 1)

RHO: Triple = (2, 1, -3)
SHORT_ROOTS: tuple[Triple, ...] = ((1, -1, 0), (0, 1, -1), (1, 0, -1), (-1, 1, 0), (0, -1, 1), (-1, 0, 1))
LONG_ROOTS: tuple[Triple, ...] = ((1, 1, -2), (2, -1, -1), (-1, 2, -1), (-1, -1, 2), (-2, 1, 1), (1, -2, 1))
# weights of V with multiplicity, and of the adjoint representation V_{L2}
V_WEIGHTS: tuple[Triple, ...] = SHORT_ROOTS + ((0, 0, 0),)
ADJOINT_WEIGHTS: tuple[Triple, ...] = SHORT_ROOTS + LONG_ROOTS + ((0, 0, 0), (0, 0, 0))


def casimir(lam: Weight) -> int:
    """``(lam + 2 rho, lam)``; e.g. 12 for L1 and 24 for L2."""
    e = lam.eps
    return inner(_add(e, (4, 2, -6)), e)


@dataclass(frozen=True)
class LevelRule:
    """Either the generic rule (``k is None``) or truncation at level ``k``."""

    k: Optional[int] = None

    def __post_init__(self):
        if self.k is not None and self.k < -2:
            raise ValueError("level must be at least -2")

    @property
    def generic(self) -> bool:
        return self.k is None

    @property
    def theta(self) -> Triple:
        if self.k is None:
            raise ValueError("generic rule has no affine wall")
        return (1, 1, -2) if self.k % 3 == 0 else (1, 0, -1)

    @property
    def wall(self) -> int:
        """Value of ``(lam + rho, theta)`` on the affine wall."""
        if self.k is None:
            raise ValueError("generic rule has no affine wall")
        return self.k + 12

    @property
    def ell(self) -> Optional[int]:
        """Order of q**2 at this level, ``k + 12``."""
        return None if self.k is None else self.k + 12

    def contains(self, lam: Weight) -> bool:
        return in_alcove(lam, self)

    def __str__(self) -> str:
        return "generic" if self.k is None else f"level {self.k}"

    @classmethod
    def parse(cls, text: str) -> "LevelRule":
        text = str(text).strip().lower()
        if text in ("generic", "none", ""):
            return GENERIC
        return cls(int(text))


GENERIC = LevelRule(None)


def level(k: int) -> LevelRule:
    return LevelRule(k)


def in_alcove(lam: Weight, rule: LevelRule) -> bool:
    """Membership in the set of labels of simple objects for ``rule``."""
    if rule.k is None:
        return True
    m1, m2 = lam.young
    if rule.k % 3 == 0:
        return 3 * (m1 + m2) <= rule.k
    return 2 * m1 + m2 <= rule.k + 6


def require_alcove(lam: Weight, rule: LevelRule) -> None:
    if not in_alcove(lam, rule):
        raise NotInAlcove(f"{lam} is not in the alcove of {rule}")


def _perm_sign(p: tuple[int, ...]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _finite_dominate(v: Triple) -> Optional[tuple[Triple, int]]:
    """Move a shifted vector into the chamber ``v1 > v2 > 0``.

    Returns ``None`` on a reflection hyperplane; otherwise the dominant image
    and the determinant of the Weyl group element used.
    """
    if 0 in v or v[0] == v[1] or v[1] == v[2] or v[0] == v[2]:
        return None
    if sum(1 for x in v if x > 0) == 1:
        v = (-v[0], -v[1], -v[2])  # -1 has determinant +1 on the plane
    order = tuple(sorted(range(3), key=lambda i: -v[i]))
    return (v[order[0]], v[order[1]], v[order[2]]), _perm_sign(order)


def _affine_step(v: Triple, rule: LevelRule) -> Triple:
    th = rule.theta
    t = inner(v, th) - rule.wall
    scale = 2 * t // inner(th, th)
    return (v[0] - scale * th[0], v[1] - scale * th[1], v[2] - scale * th[2])


def straighten(v: Triple, rule: LevelRule) -> Optional[tuple[Weight, int]]:
    """Dot-action straightening of a ``rho``-shifted vector.

    Parameters
    ----------
    v : triple
        ``lam + rho`` for some integral (possibly non-dominant) ``lam``.
    rule : LevelRule
        Generic uses the finite Weyl group, a level uses the affine one.

    Returns
    -------
    (Weight, sign) or None
        ``None`` when ``v`` lies on a reflection hyperplane.
    """
    sign = 1
    for _ in range(10_000):
        res = _finite_dominate(v)
        if res is None:
            return None
        v, s = res
        sign *= s
        if rule.k is None:
            break
        t = inner(v, rule.theta) - rule.wall
        if t < 0:
            break
        if t == 0:
            return None
        v = _affine_step(v, rule)
        sign = -sign
    else:  # pragma: no cover - the affine Weyl group action always terminates
        raise RuntimeError("straightening did not terminate")
    return Weight.from_eps(_sub(v, RHO)), sign


def affine_reflect(lam: Weight, rule: LevelRule) -> tuple[Weight | Triple, int, bool]:
    """Dot action of the affine reflection ``s0`` on ``lam``.

    Returns the image (a :class:`Weight` when dominant, otherwise the raw
    epsilon triple), the sign ``-1`` of the reflection, and whether
    ``lam + rho`` lies on some reflecting hyperplane of the affine Weyl group.

    >>> affine_reflect(Weight(1, 1), LevelRule(3))
    (Weight[1,0], -1, False)
    """
    if rule.k is None:
        raise ValueError("affine_reflect requires a level rule")
    v = _add(lam.eps, RHO)
    image = _sub(_affine_step(v, rule), RHO)
    fixed = straighten(v, rule) is None
    a, b = image[0] - image[1], image[1]
    out: Weight | Triple = Weight(a, b) if a >= 0 and b >= 0 else image
    return out, -1, fixed


def dominant_weights(max_size: int) -> Iterator[Weight]:
    """All dominant weights with ``mu1 + mu2 <= max_size``, in sort order."""
    for s in range(max_size + 1):
        for a in sorted(s - 2 * b for b in range(s // 2 + 1)):
            yield Weight(a, (s - a) // 2)


def all_weyl_images(v: Triple) -> list[tuple[Triple, int]]:
    """The twelve images ``w(v)`` with determinants (for tests)."""
    out = []
    for p in permutations(range(3)):
        s = _perm_sign(p)
        img = (v[p[0]], v[p[1]], v[p[2]])
        out.append((img, s))
        out.append(((-img[0], -img[1], -img[2]), s))
    return out
