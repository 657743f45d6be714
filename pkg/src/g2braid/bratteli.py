"""Path bases for ``Hom(V_mu, V^{(x)n})`` and their block structure.

A path is a sequence ``0 = mu_0, mu_1 = [1,0], ..., mu_n`` in which every step
``mu_j -> mu_{j+1}`` is a summand of ``V_{mu_j} (x) V`` under the level rule.
The braid generator ``S_i`` only changes ``mu_i``, so it is block diagonal
with one block for every choice of the remaining entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import UnknownFormat
from .fusion import product, tensor_V
from .lattice import GENERIC, L1, L2, ZERO, LevelRule, Weight, require_alcove

__all__ = [
    "BratteliDiagram", "Block", "build_diagram", "homdim", "paths", "blocks",
    "export", "EIGEN_GAMMA", "eigen_index", "new_part",
]

Path = tuple[Weight, ...]

# index of each Drinfeld eigenvalue and the summand of V (x) V it belongs to
EIGEN_GAMMA: dict[int, Weight] = {1: Weight(2, 0), 2: L2, 3: L1, 4: ZERO}


def eigen_index(gamma: Weight) -> int:
    for idx, g in EIGEN_GAMMA.items():
        if g == gamma:
            return idx
    raise KeyError(f"{gamma} is not a summand of V (x) V")


@dataclass(frozen=True)
class BratteliDiagram:
    """Levelled graph of simple summands of ``V^{(x)j}``, ``j = 0..n``.

    ``levels[j]`` maps each weight to the number of paths reaching it.
    ``edges[j]`` lists pairs ``(mu, nu)`` joining level ``j`` to ``j+1``.
    """

    n: int
    rule: LevelRule
    levels: tuple[dict, ...]
    edges: tuple[tuple[tuple[Weight, Weight], ...], ...]

    def vertices(self, j: int) -> list[Weight]:
        return sorted(self.levels[j], key=Weight.sort_key)


@lru_cache(maxsize=None)
def build_diagram(n: int, rule: LevelRule = GENERIC) -> BratteliDiagram:
    """Diagram for ``V^{(x)j}``, ``0 <= j <= n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    levels = [{ZERO: 1}]
    edges = []
    for _ in range(n):
        nxt: dict[Weight, int] = {}
        step = []
        for mu in sorted(levels[-1], key=Weight.sort_key):
            for nu, mult in tensor_V(mu, rule).items():
                step.append((mu, nu))
                nxt[nu] = nxt.get(nu, 0) + mult * levels[-1][mu]
        levels.append(nxt)
        edges.append(tuple(step))
    return BratteliDiagram(n, rule, tuple(levels), tuple(edges))


def homdim(mu: Weight, n: int, rule: LevelRule = GENERIC) -> int:
    """Number of paths of length ``n`` ending at ``mu``."""
    require_alcove(mu, rule)
    return build_diagram(n, rule).levels[n].get(mu, 0)


@lru_cache(maxsize=None)
def paths(mu: Weight, n: int, rule: LevelRule = GENERIC) -> tuple[Path, ...]:
    """All paths ending at ``mu``, ordered lexicographically by ``(|w|, a, b)`` per entry."""
    require_alcove(mu, rule)
    diagram = build_diagram(n, rule)
    # walk backwards from mu through vertices that can reach it
    preds: list[dict[Weight, list[Weight]]] = []
    for j in range(n):
        table: dict[Weight, list[Weight]] = {}
        for a, b in diagram.edges[j]:
            table.setdefault(b, []).append(a)
        preds.append(table)

    out: list[Path] = []

    def extend(suffix: list[Weight], j: int):
        if j == 0:
            if suffix[0] == ZERO:
                out.append(tuple(suffix))
            return
        for prev in preds[j - 1].get(suffix[0], []):
            extend([prev] + suffix, j - 1)

    if mu in diagram.levels[n]:
        extend([mu], n)
    out.sort(key=lambda p: tuple(w.sort_key() for w in p))
    return tuple(out)


@dataclass(frozen=True)
class Block:
    """One diagonal block of ``S_i`` on the path basis.

    Attributes
    ----------
    position : int
        Generator index ``i`` (1-based); the block changes entry ``i`` of the path.
    boundary : (Weight, Weight)
        ``(mu_{i-1}, mu_{i+1})``.
    intermediates : tuple of Weight
        The values of ``mu_i`` in path order.
    eigen_multiset : tuple of int
        Eigenvalue indices (1..4), sorted, with multiplicities given by fusion.
    path_indices : tuple of int
        Positions of the block's paths in the full path basis.
    """

    position: int
    boundary: tuple[Weight, Weight]
    intermediates: tuple[Weight, ...]
    eigen_multiset: tuple[int, ...]
    path_indices: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.intermediates)

    def distinct_eigen(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.eigen_multiset)))

    def multiplicity(self, idx: int) -> int:
        return self.eigen_multiset.count(idx)

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "boundary": [w.to_json() for w in self.boundary],
            "intermediates": [w.to_json() for w in self.intermediates],
            "eigen_multiset": list(self.eigen_multiset),
            "paths": list(self.path_indices),
        }


@lru_cache(maxsize=None)
def eigen_multiset(lam: Weight, nu: Weight, rule: LevelRule = GENERIC) -> tuple[int, ...]:
    """Multiset of eigenvalue indices predicted by ``N^nu_{lam, gamma}``."""
    out: list[int] = []
    for gamma in tensor_V(L1, rule):
        out.extend([eigen_index(gamma)] * product(lam, gamma, rule)[nu])
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def blocks(mu: Weight, n: int, i: int, rule: LevelRule = GENERIC) -> tuple[Block, ...]:
    """Blocks of ``S_i`` on ``Hom(V_mu, V^{(x)n})``, ordered by first path index."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    groups: dict[tuple, list[int]] = {}
    basis = paths(mu, n, rule)
    for idx, p in enumerate(basis):
        key = p[:i] + p[i + 1:]
        groups.setdefault(key, []).append(idx)
    out = []
    for key, idxs in groups.items():
        lam, nu = basis[idxs[0]][i - 1], basis[idxs[0]][i + 1]
        mids = tuple(basis[j][i] for j in idxs)
        spec = eigen_multiset(lam, nu, rule)
        if len(spec) != len(mids):
            raise AssertionError(f"fusion predicts {len(spec)} eigenvalues for a block of size {len(mids)}")
        out.append(Block(i, (lam, nu), mids, spec, tuple(idxs)))
    out.sort(key=lambda b: b.path_indices[0])
    return tuple(out)


def new_part(n: int, rule: LevelRule = GENERIC) -> list[Weight]:
    """Weights at level ``n`` that did not occur at any earlier level."""
    diagram = build_diagram(n, rule)
    seen = set()
    for j in range(n):
        seen.update(diagram.levels[j])
    return [w for w in diagram.vertices(n) if w not in seen]


def export(diagram: BratteliDiagram, fmt: str = "json") -> str:
    """Serialize a diagram as ``"json"`` or Graphviz ``"dot"`` text."""
    if fmt == "json":
        data = {
            "rule": str(diagram.rule),
            "levels": [
                [{"weight": w.to_json(), "paths": diagram.levels[j][w]} for w in diagram.vertices(j)]
                for j in range(diagram.n + 1)
            ],
            "edges": [[j, a.to_json(), b.to_json()] for j, step in enumerate(diagram.edges) for a, b in step],
        }
        return json.dumps(data, indent=2)
    if fmt == "dot":
        def node(j: int, w: Weight) -> str:
            m1, m2 = w.young
            return f"L{j}_{m1}_{m2}"

        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for j in range(diagram.n + 1):
            for w in diagram.vertices(j):
                lines.append(f'  {node(j, w)} [label="{w}"];')
        for j, step in enumerate(diagram.edges):
            for a, b in step:
                lines.append(f"  {node(j, a)} -> {node(j + 1, b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown diagram format {fmt!r}; use 'json' or 'dot'")
