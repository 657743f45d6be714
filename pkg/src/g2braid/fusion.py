"""Tensor product multiplicities for G2, generic and truncated at level k.

Products with ``V = V_[1,0]`` and with the adjoint ``V_[1,1]`` are computed
with the Brauer-Klimyk rule: add every weight of the second factor (with
multiplicity) to ``lam + rho`` and straighten under the finite or affine Weyl
group, keeping signs.  Arbitrary products are reduced to these two by a
recursion on the highest weight.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import NotExpressible
from .lattice import (
    ADJOINT_WEIGHTS, GENERIC, L1, L2, RHO, V_WEIGHTS, ZERO, LevelRule, Weight,
    require_alcove, straighten,
)

__all__ = [
    "FusionVector", "tensor_V", "tensor_adjoint", "grothendieck_mul",
    "alcove_weights", "fusion_coefficient", "tensor_V_vector", "product",
]


class FusionVector(Mapping):
    """Formal integer combination of weights; zero entries are never stored.

    Behaves as a read-only mapping ``Weight -> int``.  Supports ``+``, ``-``
    and multiplication by integers.  Iteration follows the weight sort order.
    """

    __slots__ = ("_data", "_keys")

    def __init__(self, entries: Mapping[Weight, int] | Iterable[tuple[Weight, int]] | None = None):
        data: dict[Weight, int] = {}
        if entries:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for w, c in items:
                data[w] = data.get(w, 0) + int(c)
        self._data = {w: c for w, c in data.items() if c != 0}
        self._keys = sorted(self._data, key=Weight.sort_key)

    @classmethod
    def of(cls, *weights: Weight) -> "FusionVector":
        return cls((w, 1) for w in weights)

    def __getitem__(self, w: Weight) -> int:
        return self._data.get(w, 0)

    def __contains__(self, w) -> bool:
        return w in self._data

    def __iter__(self) -> Iterator[Weight]:
        return iter(self._keys)

    def __len__(self) -> int:
        return len(self._data)

    def __add__(self, other: "FusionVector") -> "FusionVector":
        out = dict(self._data)
        for w, c in other.items():
            out[w] = out.get(w, 0) + c
        return FusionVector(out)

    def __neg__(self) -> "FusionVector":
        return FusionVector({w: -c for w, c in self._data.items()})

    def __sub__(self, other: "FusionVector") -> "FusionVector":
        return self + (-other)

    def __mul__(self, n: int) -> "FusionVector":
        if not isinstance(n, int):
            return NotImplemented
        return FusionVector({w: n * c for w, c in self._data.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, FusionVector):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == {w: c for w, c in other.items() if c}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    def is_actual(self) -> bool:
        """True when every multiplicity is positive."""
        return all(c > 0 for c in self._data.values())

    def support(self) -> list[Weight]:
        return list(self._keys)

    def to_json(self) -> dict[str, int]:
        return {str(w): self._data[w] for w in self._keys}

    def __repr__(self) -> str:
        body = " + ".join(f"{c}{w}" if c != 1 else str(w) for w, c in ((w, self._data[w]) for w in self._keys))
        return f"FusionVector({body or '0'})"


def _brauer_klimyk(lam: Weight, weights: tuple, rule: LevelRule) -> FusionVector:
    base = lam.eps
    out: dict[Weight, int] = {}
    for om in weights:
        v = (base[0] + RHO[0] + om[0], base[1] + RHO[1] + om[1], base[2] + RHO[2] + om[2])
        res = straighten(v, rule)
        if res is None:
            continue
        w, s = res
        out[w] = out.get(w, 0) + s
    result = FusionVector(out)
    if not result.is_actual():  # pragma: no cover - guarded by the rule's correctness
        raise AssertionError(f"negative multiplicity in product of {lam} under {rule}: {result}")
    return result


@lru_cache(maxsize=None)
def tensor_V(lam: Weight, rule: LevelRule = GENERIC) -> FusionVector:
    """Decomposition of ``V_lam (x) V`` with ``V = V_[1,0]``.

    >>> tensor_V(Weight(1, 0)).to_json()
    {'[0,0]': 1, '[1,0]': 1, '[1,1]': 1, '[2,0]': 1}
    """
    require_alcove(lam, rule)
    return _brauer_klimyk(lam, V_WEIGHTS, rule)


@lru_cache(maxsize=None)
def tensor_adjoint(lam: Weight, rule: LevelRule = GENERIC) -> FusionVector:
    """Decomposition of ``V_lam (x) V_[1,1]``."""
    require_alcove(lam, rule)
    return _brauer_klimyk(lam, ADJOINT_WEIGHTS, rule)


def _linear(f, x: FusionVector, rule: LevelRule) -> FusionVector:
    out = FusionVector()
    for w, c in x.items():
        out = out + c * f(w, rule)
    return out


def tensor_V_vector(x: FusionVector, rule: LevelRule = GENERIC) -> FusionVector:
    """Linear extension of :func:`tensor_V`."""
    return _linear(tensor_V, x, rule)


def tensor_adjoint_vector(x: FusionVector, rule: LevelRule = GENERIC) -> FusionVector:
    """Linear extension of :func:`tensor_adjoint`."""
    return _linear(tensor_adjoint, x, rule)


@lru_cache(maxsize=None)
def _times_basis(lam: Weight, gen: Weight, rule: LevelRule) -> FusionVector:
    """``V_lam (x) V_gen`` through the generator recursion on ``gen``."""
    if gen == ZERO:
        return FusionVector({lam: 1})
    if gen.b > 0:
        step, lower, via = L2, Weight(gen.a, gen.b - 1), tensor_adjoint
    else:
        step, lower, via = L1, Weight(gen.a - 1, 0), tensor_V
    expansion = via(lower, rule) if _in(lower, rule) else None
    if expansion is None or expansion[gen] != 1:
        raise NotExpressible(
            f"cannot isolate {gen} in {lower} (x) {step} under {rule}"
        )
    # V_lam (x) V_lower (x) V_step, then subtract the other summands
    acc = _linear(via, _times_basis(lam, lower, rule), rule)
    for w, c in expansion.items():
        if w != gen:
            acc = acc - c * _times_basis(lam, w, rule)
    return acc


def _in(w: Weight, rule: LevelRule) -> bool:
    from .lattice import in_alcove
    return in_alcove(w, rule)


def grothendieck_mul(x: FusionVector, y: FusionVector, rule: LevelRule = GENERIC) -> FusionVector:
    """Product in the (truncated) representation ring.

    ``y`` is expanded as a polynomial in ``V`` and ``V_[1,1]``; intermediate
    results may have negative entries.

    Raises
    ------
    NotExpressible
        If a summand of ``y`` cannot be isolated by the recursion.
    NotInAlcove
        If either factor has support outside the alcove.
    """
    for w in list(x) + list(y):
        require_alcove(w, rule)
    out = FusionVector()
    for gen, cy in y.items():
        for lam, cx in x.items():
            out = out + (cx * cy) * _times_basis(lam, gen, rule)
    return out


def product(lam: Weight, mu: Weight, rule: LevelRule = GENERIC) -> FusionVector:
    """``V_lam (x) V_mu`` for two simple objects."""
    return grothendieck_mul(FusionVector({lam: 1}), FusionVector({mu: 1}), rule)


def fusion_coefficient(nu: Weight, lam: Weight, gamma: Weight, rule: LevelRule = GENERIC) -> int:
    """Multiplicity of ``V_nu`` in ``V_lam (x) V_gamma``."""
    return product(lam, gamma, rule)[nu]


def alcove_weights(rule: LevelRule) -> list[Weight]:
    """Every label of a simple object at the given level, sorted by ``(|lam|, a)``."""
    if rule.k is None:
        raise ValueError("the generic rule has infinitely many weights")
    k = rule.k
    bound = k // 3 if k % 3 == 0 else k + 6
    out = []
    for s in range(max(bound, 0) + 1):
        for a in sorted(s - 2 * b for b in range(s // 2 + 1)):
            w = Weight(a, (s - a) // 2)
            if _in(w, rule):
                out.append(w)
    return out
