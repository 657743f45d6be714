"""Braid generator matrices on the path basis of ``Hom(V_mu, V^{(x)n})``.

Each generator ``S_i`` is block diagonal (see :mod:`g2braid.bratteli`).  A block
with boundary ``(lam, nu)`` and intermediates ``mu_1..mu_m`` is a matrix ``A``
with a prescribed spectrum satisfying ``T A T A = delta`` where
``T = diag(x_r)``, ``x_r = q^(C_{mu_r} - C_lam - 12)`` and
``delta = q^(C_nu - C_lam - 24)``.

How a block is built depends on its spectrum:

* ``diagonal``: one eigenvalue, or a block forced to be diagonal.
* ``two_eig``: a 2x2 block; the eigenprojection diagonal has a closed form.
* ``ab2_closed_form``: two eigenvalues ``a, b`` of any multiplicity plus one
  rank-one eigenvalue ``c``.  The diagonal of the rank-one projection has a
  closed form, and ``A`` then follows entrywise from
  ``(delta + a b x_i x_j)/delta * a_ij = (a+b) [i=j] + (c-a)(c-b)/c * p_ij``.
* ``four_eig_solver``: more than one rank-one eigenvalue.  The projection for
  the trivial summand is fixed by quantum dimensions; the remaining rank-one
  projection is found by Gauss-Newton on the same entrywise identity, with
  any entry whose denominator vanishes treated as an extra unknown.

Exact contexts build blocks in the row gauge ``P_rs = d_r``.  Float assembly
uses the symmetric gauge ``P = v v^T`` and then fixes one sign per path so
that neighbouring generators satisfy the braid relation.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .bratteli import Block, blocks, eigen_multiset, paths
from .dims import admissible_q, qdim
from .errors import ConditionsViolated, GaugeSolverFailed, InadmissibleQ, SolverFailed, TLViolation
from .fusion import tensor_V
from .lattice import GENERIC, L1, LevelRule, Weight, casimir, require_alcove
from .qarith import CycloContext, FloatContext, QContext

__all__ = [
    "EigenData", "eigen_data", "twist", "AB2Params", "ab2_params", "block_roles",
    "two_eig_diagonal", "ab2_diagonal", "markov_diagonal", "synth_block", "synth_block_float",
    "BraidMatrix", "BraidRepresentation", "assemble", "tl_elements", "intermediates",
    "DEFAULT_MAX_N", "METHODS",
]

DEFAULT_MAX_N = 5
METHODS = ("diagonal", "two_eig", "ab2_closed_form", "four_eig_solver")
C_V = 12


# ---------------------------------------------------------------------------
# eigenvalues and twists
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenData:
    """Eigenvalues of the braiding on ``V (x) V`` and the twist of ``V``.

    ``l1 = q^2`` on ``V_[2,0]``, ``l2 = -1`` on ``V_[1,1]``,
    ``l3 = -q^-6`` on ``V_[1,0]`` and ``l4 = q^-12`` on the trivial summand.
    """

    ctx: QContext
    l1: object
    l2: object
    l3: object
    l4: object
    theta_v: object
    collisions: tuple[tuple[int, int], ...] = ()

    def value(self, idx: int):
        return (self.l1, self.l2, self.l3, self.l4)[idx - 1]

    def as_complex(self) -> dict[int, complex]:
        return {i: self.ctx.to_complex(self.value(i)) for i in range(1, 5)}


def eigen_data(ctx: QContext) -> EigenData:
    """Eigenvalues in ``ctx``.

    Raises
    ------
    InadmissibleQ
        If ``q**2 == 1`` (the symmetric case) or the ribbon identities fail.
    """
    l1, l2, l3, l4 = ctx.qpow(2), ctx.from_int(-1), -ctx.qpow(-6), ctx.qpow(-12)
    theta = ctx.qpow(12)
    if ctx.equal(l1, ctx.one()):
        raise InadmissibleQ("q^2 = 1 gives a symmetric category, which is excluded")
    checks = {
        "l3 = -l1^-3": ctx.equal(l3 * l1 ** 3, ctx.from_int(-1)),
        "l4 = l1^-6": ctx.equal(l4 * l1 ** 6, ctx.one()),
        "theta = l3^-2": ctx.equal(theta * l3 ** 2, ctx.one()),
        "l4^2 = l3^4": ctx.equal(l4 ** 2, l3 ** 4),
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise InadmissibleQ(f"ribbon identities fail: {bad}")
    vals = (l1, l2, l3, l4)
    coll = tuple((i + 1, j + 1) for i, j in itertools.combinations(range(4), 2) if ctx.equal(vals[i], vals[j]))
    return EigenData(ctx, l1, l2, l3, l4, theta, coll)


def twist(mu: Weight, ctx: QContext):
    """Twist ``q^{C_mu}`` of ``V_mu``."""
    return ctx.qpow(casimir(mu))


# ---------------------------------------------------------------------------
# block parameters
# ---------------------------------------------------------------------------

def intermediates(lam: Weight, nu: Weight, rule: LevelRule = GENERIC) -> tuple[Weight, ...]:
    """All ``mu`` with ``lam -> mu -> nu`` in the diagram, in sort order."""
    return tuple(sorted((mu for mu in tensor_V(lam, rule) if nu in tensor_V(mu, rule)), key=Weight.sort_key))


def block_roles(multiset: Sequence[int]) -> tuple[str, tuple[int, int] | None, tuple[int, ...]]:
    """Decide the synthesis method for an eigenvalue multiset.

    Returns ``(method, pair, rank_one)`` where ``pair`` holds the two
    eigenvalues treated through the quadratic identity and ``rank_one`` the
    remaining eigenvalues, each of multiplicity one.
    """
    ms = tuple(sorted(multiset))
    distinct = sorted(set(ms))
    if len(ms) == 1 or len(distinct) == 1:
        return "diagonal", None, ()
    if len(ms) == 2:
        return "two_eig", (distinct[0], distinct[1]), ()
    counts = {e: ms.count(e) for e in distinct}
    if 1 in counts and 2 in counts and all(counts[e] == 1 for e in distinct if e not in (1, 2)):
        pair = (1, 2)
    else:
        ranked = sorted(distinct, key=lambda e: (-counts[e], e))
        pair = tuple(sorted(ranked[:2]))
    rest = tuple(e for e in distinct if e not in pair)
    if any(counts[e] != 1 for e in rest):
        raise ConditionsViolated(f"eigenvalue multiset {ms} has a repeated rank>1 eigenvalue outside the pair",
                                 ["rank_one"])
    if not rest:
        return "diagonal", pair, ()
    if len(rest) == 1:
        return "ab2_closed_form", pair, rest
    return "four_eig_solver", pair, rest


@dataclass
class AB2Params:
    """Twist data of one block.

    Attributes
    ----------
    delta, x : values in the block's context
    delta_exp, x_exps : the corresponding integer exponents of q
    conditions : dict of str to bool
        ``x_distinct``, ``delta_not_square`` and ``delta_plus_nonzero``;
        ``single_consistent`` for 1x1 blocks.
    """

    lam: Weight
    nu: Weight
    intermediates: tuple[Weight, ...]
    eigen_multiset: tuple[int, ...]
    delta: object
    x: list
    delta_exp: int
    x_exps: list[int]
    method: str
    pair: tuple[int, int] | None
    rank_one: tuple[int, ...]
    conditions: dict[str, bool] = field(default_factory=dict)

    def required(self) -> list[str]:
        if self.method == "diagonal" and len(self.intermediates) == 1:
            return ["single_consistent"]
        if self.method == "two_eig":
            return ["x_distinct"]
        if self.method == "ab2_closed_form":
            return ["x_distinct", "delta_not_square", "delta_plus_nonzero"]
        if self.method == "four_eig_solver":
            return ["x_distinct"]
        return ["x_distinct", "delta_plus_nonzero"]

    def failed(self) -> list[str]:
        return [c for c in self.required() if not self.conditions.get(c, True)]


def ab2_params(lam: Weight, nu: Weight, mids: Sequence[Weight], ctx: QContext,
               rule: LevelRule = GENERIC, strict: bool = True, eig: EigenData | None = None) -> AB2Params:
    """Compute ``delta`` and ``x_r`` for a block and evaluate its nondegeneracy predicates.

    Raises
    ------
    ConditionsViolated
        When ``strict`` and a predicate required by the block's method fails.
    """
    mids = tuple(mids)
    for mu in mids:
        if mu not in tensor_V(lam, rule) or nu not in tensor_V(mu, rule):
            raise ValueError(f"{lam} -> {mu} -> {nu} is not a path in the diagram")
    eig = eig or eigen_data(ctx)
    spectrum = eigen_multiset(lam, nu, rule)
    if len(spectrum) != len(mids):
        raise ValueError("intermediates do not match the fusion multiplicities")
    method, pair, rank_one = block_roles(spectrum)
    c_lam = casimir(lam)
    dexp = casimir(nu) - c_lam - 2 * C_V
    xexps = [casimir(mu) - c_lam - C_V for mu in mids]
    delta = ctx.qpow(dexp)
    x = [ctx.qpow(e) for e in xexps]
    cond: dict[str, bool] = {}
    cond["x_distinct"] = all(not ctx.equal(x[r], x[s]) for r in range(len(x)) for s in range(r))
    if len(mids) == 1:
        lamg = eig.value(spectrum[0])
        cond["single_consistent"] = ctx.equal(lamg * lamg * x[0] * x[0], delta)
    if pair is not None:
        a, b = eig.value(pair[0]), eig.value(pair[1])
        cond["delta_not_square"] = all(not ctx.equal(delta, lk * lk * xr * xr) for lk in (a, b) for xr in x)
        cond["delta_plus_nonzero"] = all(not ctx.is_zero(delta + a * b * xr * xs) for xr in x for xs in x)
    if method in ("ab2_closed_form", "diagonal") and pair is not None and (
            not cond["delta_plus_nonzero"] or (method == "ab2_closed_form" and not cond["delta_not_square"])):
        # the closed form degenerates (this happens for non-recent blocks at
        # roots of unity); the numerical solver handles vanishing denominators
        method = "four_eig_solver"
    params = AB2Params(lam, nu, mids, spectrum, delta, x, dexp, xexps, method, pair, rank_one, cond)
    if strict and params.failed():
        raise ConditionsViolated(f"block ({lam}, {nu}) fails {params.failed()}", params.failed())
    return params


# ---------------------------------------------------------------------------
# closed forms (generic field arithmetic: works for RatFunc, CycNumber, complex)
# ---------------------------------------------------------------------------

def two_eig_diagonal(proj, other, xr, xs):
    """Diagonal entries ``(d_r, d_s)`` of the eigenprojection for ``proj`` in a 2x2 block."""
    dr = -(proj * xs + other * xr) / ((xr - xs) * (proj - other))
    ds = (proj * xr + other * xs) / ((xr - xs) * (proj - other))
    return dr, ds


def ab2_diagonal(a, b, c, delta, x: Sequence, one):
    """Diagonal of the rank-one eigenprojection for ``c`` (closed form).

    ``a`` and ``b`` are the two remaining eigenvalues, ``x`` the twist ratios
    and ``one`` the unit of the coefficient ring.
    """
    n = len(x)
    eps = 1 - n % 2
    prod_x = one
    for t in x:
        prod_x = prod_x * t
    pref = c / ((c - a) * (c - b))
    sign = one if n % 2 == 1 else -one
    power = (-delta / (a * b))
    k = (n - 1 - eps) // 2
    powk = one
    for _ in range(k):
        powk = powk * power
    out = []
    for r, xr in enumerate(x):
        prod = one
        for s, xs in enumerate(x):
            if s != r:
                prod = prod * (delta + a * b * xr * xs) / (delta * (xr - xs))
        bracket = sign * c * (a * b * xr + delta / xr) / delta * prod_x - (a + b) * powk * (xr if eps else one)
        out.append(pref * prod * bracket)
    return out


def markov_diagonal(lam: Weight, mids: Sequence[Weight], ctx: QContext) -> list:
    """``d_{mu_r} / (d_lam d_V)``: diagonal of the trivial-summand projection."""
    dl = qdim(lam, ctx) * qdim(L1, ctx)
    return [qdim(mu, ctx) / dl for mu in mids]


def _entrywise_from_projection(p: list[list], coeff, a, b, params: AB2Params, ctx: QContext, extra=None):
    n = len(params.x)
    delta = params.delta
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = coeff * p[i][j]
            if extra is not None:
                rhs = rhs + extra[i][j]
            if i == j:
                rhs = rhs + (a + b)
            row.append(delta * rhs / (delta + a * b * params.x[i] * params.x[j]))
        out.append(row)
    return out


def synth_block(params: AB2Params, ctx: QContext, eig: EigenData | None = None) -> tuple[list[list], dict]:
    """Exact block matrix in the row gauge.

    Returns ``(matrix, info)`` where ``matrix`` is a list of rows of context
    values and ``info`` records the method and the projection diagonal used.

    Raises
    ------
    SolverFailed
        For blocks that need the numerical solver (float contexts only).
    """
    eig = eig or eigen_data(ctx)
    n = len(params.x)
    spec = params.eigen_multiset
    zero = ctx.zero()
    if params.method == "diagonal" and n == 1:
        return [[eig.value(spec[0])]], {"method": "diagonal"}
    if params.method == "diagonal" and params.pair is None:
        val = eig.value(spec[0])
        return [[val if i == j else zero for j in range(n)] for i in range(n)], {"method": "diagonal"}
    if params.method == "two_eig":
        ia, ib = params.pair
        a, b = eig.value(ia), eig.value(ib)
        # the row-gauge projection is the eigenprojection for b
        dr, ds = two_eig_diagonal(b, a, params.x[0], params.x[1])
        d = [dr, ds]
        p = [[d[i] for _ in range(2)] for i in range(2)]
        mat = [[(a if i == j else zero) + (b - a) * p[i][j] for j in range(2)] for i in range(2)]
        return mat, {"method": "two_eig", "projected": ib, "diagonal": d}
    a, b = eig.value(params.pair[0]), eig.value(params.pair[1])
    if params.method == "diagonal":
        empty = [[zero] * n for _ in range(n)]
        return _entrywise_from_projection(empty, zero, a, b, params, ctx), {"method": "diagonal"}
    if params.method == "ab2_closed_form":
        ic = params.rank_one[0]
        c = eig.value(ic)
        d = ab2_diagonal(a, b, c, params.delta, params.x, ctx.one())
        p = [[d[i] for _ in range(n)] for i in range(n)]
        coeff = (c - a) * (c - b) / c
        return _entrywise_from_projection(p, coeff, a, b, params, ctx), {
            "method": "ab2_closed_form", "projected": ic, "diagonal": d}
    raise SolverFailed("blocks with two or more rank-one eigenvalues are only synthesized in float mode")


# ---------------------------------------------------------------------------
# float synthesis in the symmetric gauge
# ---------------------------------------------------------------------------

def _csqrt(z: complex) -> complex:
    return cmath.sqrt(complex(z))


def _entrywise_float(R: np.ndarray, a: complex, b: complex, delta: complex, x: np.ndarray) -> np.ndarray:
    M = delta / (delta + a * b * np.outer(x, x))
    return M * R


def _solve_rank_one(a, b, known: list[tuple[complex, np.ndarray]], unknown: list[complex],
                    delta: complex, x: np.ndarray, seed: int, starts: int, max_iter: int, tol: float):
    """Gauss-Newton for the unknown rank-one projections ``v v^T``.

    ``A`` is parametrized entrywise by
    ``a_ij = delta R_ij / (delta + a b x_i x_j)`` with
    ``R = (a+b) I + sum kappa_w w w^T``.  Entries where the denominator
    vanishes are left free and the corresponding ``R_ij`` is forced to zero.
    The residual collects ``A v_j = c_j v_j``, ``A u = l_u u``, unit length
    and orthogonality of the rank-one vectors, and ``T A T A = delta``.
    Returns every distinct solution found from ``starts`` random starts.
    """
    n = x.size
    den = delta + a * b * np.outer(x, x)
    scale_den = max(1.0, float(np.abs(den).max()))
    degenerate = [(i, j) for i in range(n) for j in range(i, n) if abs(den[i, j]) < 1e-10 * scale_den]
    safe = np.where(np.abs(den) < 1e-10 * scale_den, 1.0, den)
    M = delta / safe
    for i, j in degenerate:
        M[i, j] = M[j, i] = 0.0
    T = np.diag(x)
    eye = np.eye(n)

    def kappa(c):
        return (c - a) * (c - b) / c

    k = len(unknown)
    kap_v = [kappa(c) for c in unknown]
    base = (a + b) * eye.astype(complex)
    for c, u in known:
        base = base + kappa(c) * np.outer(u, u)
    nvar = k * n + len(degenerate)

    def residual(z):
        V = [z[j * n:(j + 1) * n] for j in range(k)]
        R = base.copy()
        for kk, v in zip(kap_v, V):
            R = R + kk * np.outer(v, v)
        A = M * R
        for t, (i, j) in enumerate(degenerate):
            A[i, j] = A[j, i] = z[k * n + t]
        parts = []
        for c, v in zip(unknown, V):
            parts.append(A @ v - c * v)
            parts.append(np.array([v @ v - 1.0]))
        for c, u in known:
            parts.append(A @ u - c * u)
        for j in range(k):
            for l in range(j + 1, k):
                parts.append(np.array([V[j] @ V[l]]))
            for _, u in known:
                parts.append(np.array([V[j] @ u]))
        if degenerate:
            parts.append(np.array([R[i, j] for i, j in degenerate]))
            parts.append((T @ A @ T @ A - delta * eye).ravel())
        return np.concatenate(parts), A

    def jacobian(z, F0):
        J = np.empty((F0.size, nvar), dtype=complex)
        for col in range(nvar):
            h = 1e-7 * max(1.0, abs(z[col]))
            zz = z.copy()
            zz[col] += h
            J[:, col] = (residual(zz)[0] - F0) / h
        return J

    rng = np.random.default_rng(seed)
    solutions: list[np.ndarray] = []
    best = np.inf
    for _ in range(starts):
        z = rng.normal(size=nvar) + 1j * rng.normal(size=nvar)
        for _it in range(max_iter):
            F, A = residual(z)
            if np.abs(F).max() < tol or not np.all(np.isfinite(F)):
                break
            step, *_ = np.linalg.lstsq(jacobian(z, F), -F, rcond=None)
            z = z + step
        if not np.all(np.isfinite(z)):
            continue
        F, A = residual(z)
        err = float(np.abs(F).max())
        best = min(best, err)
        if err < tol and not any(np.abs(A - B).max() < 1e-7 for B in solutions):
            solutions.append(A)
    return solutions, best


def _check_block_float(A: np.ndarray, spectrum: list[complex], delta: complex, x: np.ndarray, tol: float) -> float:
    n = A.shape[0]
    T = np.diag(x)
    res = np.abs(T @ A @ T @ A - delta * np.eye(n)).max()
    poly = np.eye(n, dtype=complex)
    for lam in spectrum:
        poly = poly @ (A - lam * np.eye(n))
    res = max(res, np.abs(poly).max())
    ev = np.sort_complex(np.linalg.eigvals(A))
    want = np.sort_complex(np.array(spectrum, dtype=complex))
    # match eigenvalues greedily to be robust to sort ties
    used = [False] * n
    worst = 0.0
    for w in want:
        k = int(np.argmin([abs(e - w) if not used[i] else np.inf for i, e in enumerate(ev)]))
        used[k] = True
        worst = max(worst, abs(ev[k] - w))
    return float(max(res, worst if worst > tol else 0.0))


def synth_block_float(params: AB2Params, ctx: FloatContext, rule: LevelRule = GENERIC,
                      seed: int = 0, starts: int = 16, max_iter: int = 200) -> list[np.ndarray]:
    """Symmetric-gauge block candidates in float arithmetic.

    Closed-form methods return a single candidate.  The solver may return
    several inequivalent candidates; assembly keeps the first one that
    satisfies the braid relations.

    Raises
    ------
    SolverFailed
        If no candidate passes the spectrum and ``TATA = delta`` checks.
    """
    eig = eigen_data(ctx)
    ev = eig.as_complex()
    n = len(params.x)
    x = np.array([complex(v) for v in params.x])
    delta = complex(params.delta)
    spectrum = [ev[i] for i in params.eigen_multiset]
    if params.method == "diagonal" and n == 1:
        cands = [np.array([[spectrum[0]]], dtype=complex)]
    elif params.method == "diagonal" and params.pair is None:
        cands = [spectrum[0] * np.eye(n, dtype=complex)]
    elif params.method == "two_eig":
        a, b = ev[params.pair[0]], ev[params.pair[1]]
        d = np.array(two_eig_diagonal(b, a, x[0], x[1]))
        w = np.array([_csqrt(v) for v in d])
        cands = [a * np.eye(2) + (b - a) * np.outer(w, w)]
    elif params.method == "diagonal":
        a, b = ev[params.pair[0]], ev[params.pair[1]]
        cands = [_entrywise_float((a + b) * np.eye(n, dtype=complex), a, b, delta, x)]
    elif params.method == "ab2_closed_form":
        a, b = ev[params.pair[0]], ev[params.pair[1]]
        c = ev[params.rank_one[0]]
        d = np.array(ab2_diagonal(a, b, c, delta, list(x), 1.0 + 0j))
        v = np.array([_csqrt(t) for t in d])
        R = (a + b) * np.eye(n) + (c - a) * (c - b) / c * np.outer(v, v)
        cands = [_entrywise_float(R, a, b, delta, x)]
    else:
        a, b = ev[params.pair[0]], ev[params.pair[1]]
        known, unknown = [], []
        for idx in params.rank_one:
            if idx == 4 and params.lam == params.nu:
                u = np.array([_csqrt(complex(t)) for t in markov_diagonal(params.lam, params.intermediates, ctx)])
                known.append((ev[4], u))
            else:
                unknown.append(ev[idx])
        den = delta + a * b * np.outer(x, x)
        if not unknown and np.abs(den).min() > 1e-10 * max(1.0, float(np.abs(den).max())):
            R = (a + b) * np.eye(n, dtype=complex)
            for c, u in known:
                R = R + (c - a) * (c - b) / c * np.outer(u, u)
            cands = [_entrywise_float(R, a, b, delta, x)]
        else:
            cands, best = _solve_rank_one(a, b, known, unknown, delta, x, seed, starts, max_iter, 1e-12)
            if not cands:
                raise SolverFailed(f"no rank-one solution for block ({params.lam}, {params.nu})", best)
    good = []
    worst = np.inf
    for A in cands:
        r = _check_block_float(A, spectrum, delta, x, 1e-8)
        worst = min(worst, r)
        if r < 1e-8:
            good.append(A)
    if not good:
        raise SolverFailed(f"block ({params.lam}, {params.nu}) fails its spectral checks", worst)
    return good


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

@dataclass
class BraidMatrix:
    """Generator ``S_i`` as a list of blocks with their synthesis method."""

    n: int
    i: int
    mu: Weight
    rule: LevelRule
    blocks: list[tuple[Block, np.ndarray]]
    methods: list[str]

    def dense(self, dim: int) -> np.ndarray:
        out = np.zeros((dim, dim), dtype=complex)
        for blk, mat in self.blocks:
            idx = np.array(blk.path_indices)
            out[np.ix_(idx, idx)] = mat
        return out


@dataclass
class BraidRepresentation:
    """Assembled generators ``S_1..S_{n-1}`` on ``Hom(V_mu, V^{(x)n})``."""

    mu: Weight
    n: int
    rule: LevelRule
    ctx: QContext
    basis: tuple
    generators: list[BraidMatrix]
    matrices: list[np.ndarray]
    eig: dict[int, complex]
    exact_blocks: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        def cplx(z):
            return [float(z.real), float(z.imag)]

        gens = []
        for g in self.generators:
            gens.append({
                "i": g.i,
                "blocks": [
                    {**blk.to_json(), "method": m, "matrix": [[cplx(z) for z in row] for row in mat]}
                    for (blk, mat), m in zip(g.blocks, g.methods)
                ],
            })
        out = {
            "mu": self.mu.to_json(), "n": self.n, "rule": str(self.rule), "q": self.ctx.describe(),
            "paths": [[w.to_json() for w in p] for p in self.basis],
            "generators": gens,
        }
        if self.exact_blocks:
            out["exact_blocks"] = self.exact_blocks
        return out


class _BlockCache:
    def __init__(self, ctx: FloatContext, rule: LevelRule, seed: int):
        self.ctx, self.rule, self.seed = ctx, rule, seed
        self.eig = eigen_data(ctx)
        self._store: dict[tuple[Weight, Weight], tuple[tuple, list[np.ndarray], str]] = {}

    def get(self, lam: Weight, nu: Weight):
        key = (lam, nu)
        if key not in self._store:
            mids = intermediates(lam, nu, self.rule)
            params = ab2_params(lam, nu, mids, self.ctx, self.rule, strict=True, eig=self.eig)
            cands = synth_block_float(params, self.ctx, self.rule, seed=self.seed)
            self._store[key] = (mids, cands, params.method)
        return self._store[key]


def _local_generator(pairs, fixed_at, eps_of, blockmat):
    """Matrix of a generator on a local basis of (x, y) pairs.

    ``fixed_at`` picks the coordinate that stays constant within a block (0 or 1),
    ``eps_of(pair)`` the sign of a basis vector and ``blockmat(pair)`` the
    (intermediates, matrix) of its block.
    """
    m = len(pairs)
    S = np.zeros((m, m), dtype=complex)
    index = {p: k for k, p in enumerate(pairs)}
    moving = 1 - fixed_at
    for p in pairs:
        mids, mat = blockmat(p)
        r = mids.index(p[moving])
        for s, other in enumerate(mids):
            q = list(p)
            q[moving] = other
            q = tuple(q)
            if q in index:
                S[index[q], index[p]] = eps_of(q) * eps_of(p) * mat[s, r]
    return S


def assemble(mu: Weight, n: int, rule: LevelRule = GENERIC, ctx: QContext | None = None,
             mode: str = "float", tol: float = 1e-9, seed: int = 0, max_n: int = DEFAULT_MAX_N,
             check_admissible: bool = True) -> BraidRepresentation:
    """Assemble ``S_1..S_{n-1}`` on ``Hom(V_mu, V^{(x)n})``.

    Parameters
    ----------
    ctx : QContext
        A :class:`FloatContext` or :class:`CycloContext`.  For a cyclotomic
        context the matrices are assembled at the complex value of ``q`` and
        closed-form blocks are also reported exactly.
    mode : {"float", "exact"}
        ``"exact"`` additionally records exact row-gauge blocks; the assembled
        matrices are always the float symmetric-gauge ones.

    Raises
    ------
    GaugeSolverFailed
        When no sign choice satisfies the braid relations.
    ConditionsViolated
        When a block fails its nondegeneracy predicates.
    """
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the configured maximum {max_n}")
    if n < 1:
        raise ValueError("n must be at least 1")
    require_alcove(mu, rule)
    ctx = ctx or FloatContext(1.1, tol)
    exact_ctx = None
    if isinstance(ctx, CycloContext):
        exact_ctx = ctx
        fctx = FloatContext(ctx.q_complex, tol)
    elif isinstance(ctx, FloatContext):
        fctx = ctx
    else:
        raise ValueError("assembly needs a float or cyclotomic value of q")
    if check_admissible:
        admissible_q(rule).require(exact_ctx or fctx)
    basis = paths(mu, n, rule)
    dim = len(basis)
    cache = _BlockCache(fctx, rule, seed)
    ev = cache.eig.as_complex()

    eps: list[dict] = [dict() for _ in range(n)]  # eps[i][(p[i-1], p[i], p[i+1])]
    choice: list[dict] = [dict() for _ in range(n)]  # candidate index per block type

    def block_for(i, lam, nu):
        mids, cands, _ = cache.get(lam, nu)
        return mids, cands[choice[i].get((lam, nu), 0)]

    for i in range(2, n):
        _solve_signs(i, basis, eps, choice, cache, block_for, tol)

    generators, matrices = [], []
    exact_blocks = {}
    for i in range(1, n):
        blist, meths = [], []
        for blk in blocks(mu, n, i, rule):
            lam, nu = blk.boundary
            mids, mat = block_for(i, lam, nu)
            signs = np.array([eps[i].get((lam, y, nu), 1) for y in blk.intermediates])
            local = signs[:, None] * mat * signs[None, :]
            blist.append((blk, local))
            meths.append(cache.get(lam, nu)[2])
            if mode == "exact" and exact_ctx is not None:
                key = f"{lam}->{nu}"
                if key not in exact_blocks:
                    exact_blocks[key] = _exact_block_json(lam, nu, exact_ctx, rule)
        bm = BraidMatrix(n, i, mu, rule, blist, meths)
        generators.append(bm)
        matrices.append(bm.dense(dim))
    return BraidRepresentation(mu, n, rule, exact_ctx or fctx, basis, generators, matrices, ev, exact_blocks)


def _exact_block_json(lam, nu, ctx, rule):
    mids = intermediates(lam, nu, rule)
    params = ab2_params(lam, nu, mids, ctx, rule, strict=False)
    try:
        mat, info = synth_block(params, ctx)
    except SolverFailed as exc:
        return {"method": params.method, "exact": False, "reason": str(exc)}
    return {
        "method": info["method"], "exact": True,
        "intermediates": [w.to_json() for w in mids],
        "matrix": [[x.to_json() for x in row] for row in mat],
    }


def _solve_signs(i, basis, eps, choice, cache, block_for, tol):
    """Choose signs ``eps[i]`` so that ``S_{i-1}`` and ``S_i`` braid.

    Signs are functions of the local triple ``(p[i-1], p[i], p[i+1])``, which
    makes distant generators commute by construction.  Constraints come from
    local windows ``alpha -> x -> y -> beta`` with ``alpha = p[i-2]`` and
    ``beta = p[i+1]``; windows sharing ``beta`` share unknowns and are joined
    by depth-first search.
    """
    windows: dict[Weight, dict[Weight, set]] = {}
    for p in basis:
        windows.setdefault(p[i + 1], {}).setdefault(p[i - 2], set()).add((p[i - 1], p[i]))
    for beta in sorted(windows, key=Weight.sort_key):
        by_alpha = windows[beta]
        # unknown signs: all but the first intermediate of every (x, beta) block
        xs = sorted({x for pairs in by_alpha.values() for x, _ in pairs}, key=Weight.sort_key)
        unknowns = []
        for x in xs:
            mids, _ = block_for(i, x, beta)
            unknowns.extend((x, y) for y in mids[1:])
        allowed = []
        for alpha in sorted(by_alpha, key=Weight.sort_key):
            pairs = sorted(by_alpha[alpha], key=lambda p: (p[0].sort_key(), p[1].sort_key()))
            prev = _local_generator(
                pairs, 1, lambda p, a=alpha: eps[i - 1].get((a, p[0], p[1]), 1),
                lambda p, a=alpha: block_for(i - 1, a, p[1]))
            ahat = _local_generator(pairs, 0, lambda p: 1, lambda p: block_for(i, p[0], beta))
            free_pairs = [p for p in pairs if p in set(unknowns)]
            free = np.array([pairs.index(p) for p in free_pairs], dtype=np.int64)
            scale = max(1.0, float(np.abs(prev).max())) ** 2 * max(1.0, float(np.abs(ahat).max()))
            masks = _kernels.sign_patterns(prev, ahat, free, tol * 10 * scale)
            if masks.size == 0:
                raise GaugeSolverFailed(
                    f"no sign pattern makes S_{i - 1}, S_{i} braid on window {alpha} -> ... -> {beta}",
                    residual=None)
            patterns = {tuple(1 - 2 * ((int(mk) >> j) & 1) for j in range(len(free_pairs))) for mk in masks}
            allowed.append((free_pairs, patterns))
        solution = _join(allowed)
        if solution is None:
            raise GaugeSolverFailed(f"inconsistent sign constraints for S_{i} at {beta}")
        for (x, y), s in solution.items():
            eps[i][(x, y, beta)] = s


def _join(allowed):
    assignment: dict = {}
    order = sorted(range(len(allowed)), key=lambda k: len(allowed[k][1]))

    def dfs(pos):
        if pos == len(order):
            return True
        keys, patterns = allowed[order[pos]]
        for pat in sorted(patterns, reverse=True):
            if all(assignment.get(k, s) == s for k, s in zip(keys, pat)):
                added = [k for k in keys if k not in assignment]
                for k, s in zip(keys, pat):
                    assignment[k] = s
                if dfs(pos + 1):
                    return True
                for k in added:
                    del assignment[k]
        return False

    return dict(assignment) if dfs(0) else None


# ---------------------------------------------------------------------------
# Temperley-Lieb idempotents
# ---------------------------------------------------------------------------

def tl_elements(rep: BraidRepresentation, tol: float = 1e-9, check: bool = True) -> list[np.ndarray]:
    """Eigenprojections ``e_i`` of ``S_i`` for the eigenvalue ``-1``.

    Only valid when ``rep.mu`` is in the new part (``|mu| = n``), where each
    ``S_i`` has eigenvalues ``q^2`` and ``-1`` only.

    Raises
    ------
    TLViolation
        If ``e_i^2 != e_i``, distant idempotents fail to commute, or
        ``e_i e_{i+-1} e_i != e_i / [2]^2``.
    """
    if rep.mu.size != rep.n:
        raise ValueError(f"{rep.mu} is not in the new part of V^(x){rep.n}")
    l1, l2 = rep.eig[1], rep.eig[2]
    dim = rep.dim
    eye = np.eye(dim)
    es = [(S - l1 * eye) / (l2 - l1) for S in rep.matrices]
    if not check:
        return es
    q = complex(rep.ctx.q) if isinstance(rep.ctx, FloatContext) else rep.ctx.q_complex
    two = q + 1 / q
    for k, e in enumerate(es):
        if np.abs(e @ e - e).max() > tol:
            raise TLViolation(f"e_{k + 1} is not idempotent", f"e{k + 1}^2=e{k + 1}")
    for a, b in itertools.combinations(range(len(es)), 2):
        ea, eb = es[a], es[b]
        if b - a >= 2 and np.abs(ea @ eb - eb @ ea).max() > tol:
            raise TLViolation(f"e_{a + 1} and e_{b + 1} do not commute", f"e{a + 1}e{b + 1}=e{b + 1}e{a + 1}")
        if b - a == 1:
            for u, v, name in ((ea, eb, f"e{a + 1}e{b + 1}e{a + 1}"), (eb, ea, f"e{b + 1}e{a + 1}e{b + 1}")):
                if np.abs(u @ v @ u - u / two ** 2).max() > tol:
                    raise TLViolation(f"{name} != e/[2]^2", name)
    return es
