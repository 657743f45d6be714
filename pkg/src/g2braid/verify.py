"""Named identity checks over assembled representations and level data.

Every check returns a :class:`Verdict`.  A failing verdict always carries a
witness (the generator pair, block, path or weight where the check broke),
so reports can be read without rerunning anything.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .bratteli import EIGEN_GAMMA, eigen_multiset
from .braidrep import BraidRepresentation, tl_elements
from .dims import admissible_q, dim_recursion_check, qdim, vanishing_scan
from .errors import Mismatch, TLViolation
from .fusion import alcove_weights, tensor_V
from .lattice import GENERIC, LevelRule, Weight, casimir, in_alcove, require_alcove
from .qarith import CycloContext, FloatContext, QContext

__all__ = [
    "Verdict", "check_braid_relations", "check_fulltwist", "check_burnside", "check_spectra",
    "check_braidflip", "check_cubic", "check_markov", "check_tl", "check_distinctness",
    "check_recent_blocks", "check_tl_obstruction", "recent_blocks", "report", "report_json",
    "check_lemma459", "check_dim_homomorphism", "check_dim_recursion", "LEMMA459_ZEROS",
]

# the single weight with vanishing q-dimension when q^2 has order ell,
# together with the default scan range |mu| <= maxdeg
LEMMA459_ZEROS = {4: (Weight.from_young(2, 1), 3), 9: (Weight.from_young(4, 2), 6), 5: (Weight.from_young(8, 4), 12)}

# weights of V in eps coordinates used by the recent-block bookkeeping
_E13 = (1, 0, -1)
_E23 = (0, 1, -1)
_E12 = (1, -1, 0)
_E21 = (-1, 1, 0)
_ZERO = (0, 0, 0)
OMEGA0 = {_E13: (_E12, _E23, _E13, _ZERO), _E23: (_E21, _E23, _E13, _ZERO)}


@dataclass
class Verdict:
    """Outcome of one check.

    ``residual`` is a max-norm residual for float checks and ``None`` for
    exact ones.  ``info`` holds extra data such as a computed scalar.
    """

    check: str
    passed: bool
    witness: dict | None = None
    residual: float | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)
        if not self.passed and self.witness is None:
            raise ValueError(f"failing verdict {self.check!r} needs a witness")

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"check": self.check, "pass": bool(self.passed),
               "residual": None if self.residual is None else float(self.residual),
               "witness": self.witness}
        if self.info:
            out["info"] = self.info
        return out


def _q(rep: BraidRepresentation) -> complex:
    ctx = rep.ctx
    return complex(ctx.q) if isinstance(ctx, FloatContext) else complex(ctx.q_complex)


def _path_witness(rep: BraidRepresentation, row: int, **extra) -> dict:
    return {"mu": rep.mu.to_json(), "n": rep.n, "path_index": int(row),
            "path": [w.to_json() for w in rep.basis[row]], **extra}


def _worst(diff: np.ndarray) -> tuple[float, int]:
    if diff.size == 0:
        return 0.0, 0
    flat = int(np.argmax(np.abs(diff)))
    return float(np.abs(diff).flat[flat]), flat // diff.shape[1]


def check_braid_relations(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """Adjacent braid relations and commutation of distant generators."""
    worst, witness = 0.0, None
    S = rep.matrices
    for a, b in itertools.combinations(range(len(S)), 2):
        if b - a == 1:
            diff = S[a] @ S[b] @ S[a] - S[b] @ S[a] @ S[b]
            rel = "braid"
        else:
            diff = S[a] @ S[b] - S[b] @ S[a]
            rel = "commute"
        r, row = _worst(diff)
        if r > worst:
            worst = r
            witness = _path_witness(rep, row, generators=[a + 1, b + 1], relation=rel)
    return Verdict("braid_relations", worst <= tol, witness if worst > tol else None, worst)


def _delta(rep: BraidRepresentation) -> np.ndarray:
    """Half twist ``(S_1..S_{n-1})(S_1..S_{n-2})..(S_1)``."""
    D = np.eye(rep.dim, dtype=complex)
    for top in range(rep.n - 1, 0, -1):
        for i in range(top):
            D = D @ rep.matrices[i]
    return D


def check_fulltwist(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """``(S_1..S_{n-1})^n`` is the scalar ``q^(C_mu - 12 n)``."""
    q = _q(rep)
    cox = np.eye(rep.dim, dtype=complex)
    for S in rep.matrices:
        cox = cox @ S
    full = np.linalg.matrix_power(cox, rep.n)
    expected = q ** (casimir(rep.mu) - 12 * rep.n)
    r, row = _worst(full - expected * np.eye(rep.dim))
    info = {"exponent": casimir(rep.mu) - 12 * rep.n, "scalar": [expected.real, expected.imag]}
    return Verdict("fulltwist", r <= tol, _path_witness(rep, row) if r > tol else None, r, info)


def _span_dimension(gens: list[np.ndarray], tol: float, limit: int) -> int:
    """Dimension of the algebra generated by ``gens`` (with identity).

    Words are grown breadth first; a new word is kept when its component
    orthogonal to the current span has norm above ``tol`` (relative to the
    word's norm).  Growth stops once a full round adds nothing.
    """
    d = gens[0].shape[0]
    basis: list[np.ndarray] = []

    def add(m: np.ndarray) -> bool:
        v = m.reshape(-1).astype(complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            return False
        v = v / norm
        for _ in range(2):  # reorthogonalize once for stability
            for b in basis:
                v = v - np.vdot(b, v) * b
        r = np.linalg.norm(v)
        if r <= tol:
            return False
        basis.append(v / r)
        return True

    frontier = [np.eye(d, dtype=complex)]
    add(frontier[0])
    while frontier and len(basis) < limit:
        nxt = []
        for w in frontier:
            for g in gens:
                m = g @ w
                if add(m):
                    nxt.append(m)
                    if len(basis) >= limit:
                        break
        frontier = nxt
    return len(basis)


def check_burnside(rep: BraidRepresentation, tol: float = 1e-7) -> Verdict:
    """The generators span the full matrix algebra, so the module is irreducible."""
    d = rep.dim
    if rep.n < 2 or d == 1:
        return Verdict("burnside", True, None, None, {"span": 1, "target": d * d})
    dim = _span_dimension(rep.matrices, tol, d * d)
    # confirm with a singular value rank of the sampled span
    ok = dim == d * d
    info = {"span": dim, "target": d * d}
    witness = None if ok else {"mu": rep.mu.to_json(), "n": rep.n, "span": dim, "target": d * d}
    return Verdict("burnside", ok, witness, None, info)


def check_spectra(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """Each block of the assembled generators has the fusion-predicted eigenvalues.

    Blocks are read from the dense matrices, so entries outside the block
    pattern also count towards the residual.
    """
    worst, witness = 0.0, None
    for g, dense in zip(rep.generators, rep.matrices):
        outside = np.array(dense, dtype=complex)
        for blk, _ in g.blocks:
            idx = list(blk.path_indices)
            sub = dense[np.ix_(idx, idx)]
            outside[np.ix_(idx, idx)] = 0
            want = [rep.eig[i] for i in eigen_multiset(*blk.boundary, rep.rule)]
            got = list(np.linalg.eigvals(sub))
            err = 0.0
            for w in want:
                k = int(np.argmin([abs(z - w) for z in got]))
                err = max(err, abs(got.pop(k) - w))
            if err > worst:
                worst = err
                witness = {"generator": g.i, "block": blk.to_json()}
        stray = float(np.abs(outside).max()) if outside.size else 0.0
        if stray > worst:
            worst = stray
            witness = {"generator": g.i, "outside_blocks": stray}
    return Verdict("spectra", worst <= tol, witness if worst > tol else None, worst)


def check_braidflip(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """Conjugation by the half twist sends ``S_i`` to ``S_{n-i}``."""
    if rep.n < 2:
        return Verdict("braidflip", True)
    D = _delta(rep)
    Dinv = np.linalg.inv(D)
    worst, witness = 0.0, None
    for i in range(1, rep.n):
        r, row = _worst(D @ rep.matrices[i - 1] @ Dinv - rep.matrices[rep.n - i - 1])
        if r > worst:
            worst, witness = r, _path_witness(rep, row, generator=i)
    return Verdict("braidflip", worst <= tol, witness if worst > tol else None, worst)


def check_cubic(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """``(S_i - l1)(S_i - l2)(S_i - l3) = 0`` when the trivial eigenvalue is absent.

    Requires ``|mu| >= n - 1``; below that the trivial summand of ``V (x) V``
    occurs and the cubic does not hold.
    """
    if rep.mu.size < rep.n - 1:
        raise ValueError(f"{rep.mu} has |mu| < n - 1; the quartic eigenvalue occurs")
    eye = np.eye(rep.dim)
    worst, witness = 0.0, None
    for i, S in enumerate(rep.matrices, start=1):
        C = (S - rep.eig[1] * eye) @ (S - rep.eig[2] * eye) @ (S - rep.eig[3] * eye)
        r, row = _worst(C)
        if r > worst:
            worst, witness = r, _path_witness(rep, row, generator=i)
    return Verdict("cubic", worst <= tol, witness if worst > tol else None, worst)


def _eigenprojection(S: np.ndarray, eig: dict[int, complex], idx: int) -> np.ndarray:
    eye = np.eye(S.shape[0])
    P = eye.astype(complex)
    for j, lam in eig.items():
        if j != idx:
            P = P @ (S - lam * eye) / (eig[idx] - lam)
    return P


def check_markov(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """``E_j P^gamma_i E_j = d_gamma / d_V^2 E_j`` for neighbouring generators.

    ``E_j`` is the eigenprojection of ``S_j`` for the trivial summand and
    ``P^gamma_i`` that of ``S_i`` for the summand ``gamma`` of ``V (x) V``.
    """
    q = _q(rep)
    ctx = FloatContext(q)
    dV = complex(qdim(EIGEN_GAMMA[3], ctx))
    worst, witness = 0.0, None
    projs = [{k: _eigenprojection(S, rep.eig, k) for k in range(1, 5)} for S in rep.matrices]
    for j in range(len(rep.matrices)):
        E = projs[j][4]
        for i in (j - 1, j + 1):
            if not 0 <= i < len(rep.matrices):
                continue
            for k, gamma in EIGEN_GAMMA.items():
                ratio = complex(qdim(gamma, ctx)) / dV ** 2
                r, row = _worst(E @ projs[i][k] @ E - ratio * E)
                if r > worst:
                    worst, witness = r, _path_witness(rep, row, generators=[j + 1, i + 1], summand=gamma.to_json())
    return Verdict("markov", worst <= tol, witness if worst > tol else None, worst)


def check_tl(rep: BraidRepresentation, tol: float = 1e-9) -> Verdict:
    """Temperley-Lieb relations for the ``-1`` eigenprojections on the new part."""
    try:
        tl_elements(rep, tol, check=True)
    except TLViolation as exc:
        return Verdict("temperley_lieb", False, {"mu": rep.mu.to_json(), "n": rep.n, "relation": exc.relation})
    return Verdict("temperley_lieb", True)


# ---------------------------------------------------------------------------
# integer predicates for recent blocks
# ---------------------------------------------------------------------------

def _shift(lam: Weight, om: tuple[int, int, int]) -> Weight | None:
    e = lam.eps
    v = (e[0] + om[0], e[1] + om[1], e[2] + om[2])
    a, b = v[0] - v[1], v[1]
    if a < 0 or b < 0:
        return None
    return Weight(a, b)


def _modulus(rule: LevelRule) -> int | None:
    return None if rule.k is None else 2 * (rule.k + 12)


def _same(e: int, f: int, rule: LevelRule) -> bool:
    """Whether ``q^e == q^f`` for ``q = exp(pi i / (k+12))`` (or generic q)."""
    m = _modulus(rule)
    return e == f if m is None else (e - f) % m == 0


def check_distinctness(lam: Weight, rule: LevelRule = GENERIC) -> Verdict:
    """Twists of ``lam + w`` differ for distinct ``w`` in each set of intermediate shifts.

    Raises
    ------
    NotInAlcove
        If ``lam`` is not a label at the given level.
    """
    require_alcove(lam, rule)
    for om, shifts in OMEGA0.items():
        mids = [w for w in (_shift(lam, s) for s in shifts) if w is not None and in_alcove(w, rule)]
        for a, b in itertools.combinations(mids, 2):
            if _same(casimir(a), casimir(b), rule):
                return Verdict("distinctness", False,
                               {"lambda": lam.to_json(), "mu1": a.to_json(), "mu2": b.to_json()})
    return Verdict("distinctness", True)


def recent_blocks(rule: LevelRule) -> list[tuple[Weight, Weight, tuple[Weight, ...]]]:
    """Every ``(lam, nu, intermediates)`` with ``nu = lam + e1 - e3`` or ``lam + e2 - e3``."""
    from .braidrep import intermediates

    out = []
    for lam in alcove_weights(rule):
        for om in OMEGA0:
            nu = _shift(lam, om)
            if nu is None or not in_alcove(nu, rule):
                continue
            mids = intermediates(lam, nu, rule)
            if mids:
                out.append((lam, nu, mids))
    return out


def _recent2_exception(lam: Weight, mu: Weight, nu: Weight, rule: LevelRule) -> bool:
    """The excluded configurations where ``delta = x_r^2`` can occur (gamma = -1)."""
    k = rule.k
    if k is None or k % 3 == 0:
        return False
    if _shift(lam, _E13) != mu or _shift(lam, _E23) != nu:
        return False
    m1, m2 = lam.young
    if k % 3 == 1:
        return 3 * m1 == k + 5 and 0 <= 3 * m2 <= k + 2
    return 3 * m1 == k + 7 and 0 <= 3 * m2 <= k - 2


def check_recent_blocks(rule: LevelRule) -> Verdict:
    """Nondegeneracy of every recent block at a level, in integer arithmetic.

    With ``q = exp(pi i / (k+12))`` every twist value is ``q^e`` for an
    integer ``e`` known mod ``2(k+12)``.  Checked:

    * the ``x_r`` are distinct;
    * ``delta - q^2 x_r x_s != 0`` for ``r != s`` (diagonal coincidences
      ``r == s`` do occur and are listed in ``info["diagonal_zero"]``);
    * ``delta != gamma^2 x_r^2`` for ``gamma`` in ``{q^2, -1}``, apart from the
      known exceptional configurations for ``k`` not divisible by 3, which
      are listed in ``info["exceptions"]``.
    """
    if rule.k is None:
        raise ValueError("recent-block predicates are checked at a level")
    exceptions, diagonal = [], []
    checked = 0
    for lam, nu, mids in recent_blocks(rule):
        checked += 1
        c = casimir(lam)
        dexp = casimir(nu) - c - 24
        xs = [casimir(mu) - c - 12 for mu in mids]
        wit = {"lambda": lam.to_json(), "nu": nu.to_json()}
        for r, s in itertools.combinations(range(len(xs)), 2):
            if _same(xs[r], xs[s], rule):
                return Verdict("recent_blocks", False, {**wit, "predicate": "x_distinct"})
        for r, s in itertools.combinations(range(len(xs)), 2):
            if _same(dexp, 2 + xs[r] + xs[s], rule):
                return Verdict("recent_blocks", False, {**wit, "predicate": "delta_plus_nonzero",
                                                        "paths": [mids[r].to_json(), mids[s].to_json()]})
        for mu, e in zip(mids, xs):
            if _same(dexp, 2 + 2 * e, rule):
                diagonal.append({**wit, "mu": mu.to_json()})
        for mu, e in zip(mids, xs):
            for gamma, g in (("q^2", 4), ("-1", 0)):
                if _same(dexp, g + 2 * e, rule):
                    if gamma == "-1" and _recent2_exception(lam, mu, nu, rule):
                        exceptions.append({**wit, "mu": mu.to_json()})
                        continue
                    return Verdict("recent_blocks", False, {**wit, "mu": mu.to_json(), "predicate": "delta_not_square",
                                                            "gamma": gamma})
    return Verdict("recent_blocks", True,
                   info={"blocks": checked, "exceptions": exceptions, "diagonal_zero": diagonal})


def check_tl_obstruction(ell: int, rule: LevelRule = GENERIC) -> Verdict:
    """Whether ``q^2`` of order ``ell`` is compatible with the rule.

    A Temperley-Lieb quotient at such ``q`` forces ``[ell, 1]`` out of the
    label set; the verdict fails (inconsistent) when ``[ell, 1]`` is a label.

    Raises
    ------
    ValueError
        For ``ell <= 2``.
    """
    if ell <= 2:
        raise ValueError("ell must be at least 3")
    w = Weight.from_young(ell, 1)
    present = in_alcove(w, rule)
    return Verdict("tl_obstruction", not present,
                   {"weight": w.to_json(), "rule": str(rule)} if present else None,
                   info={"weight": w.to_json(), "in_label_set": present})


def check_lemma459(ell: int, maxdeg: int | None = None) -> Verdict:
    """Exact scan of ``qdim`` zeros for ``q^2`` of order 4, 5 or 9.

    Passes when the only zero in the scanned range is the expected weight.
    ``maxdeg`` bounds ``mu1 + mu2``; it defaults to the range in
    :data:`LEMMA459_ZEROS`.
    """
    if ell not in LEMMA459_ZEROS:
        raise ValueError(f"ell must be one of {sorted(LEMMA459_ZEROS)}")
    expected, default_deg = LEMMA459_ZEROS[ell]
    maxdeg = default_deg if maxdeg is None else maxdeg
    zeros = [w for w, z in vanishing_scan(ell, maxdeg) if z and sum(w.young) <= maxdeg]
    ok = zeros == [expected] if sum(expected.young) <= maxdeg else zeros == []
    info = {"ell": ell, "maxdeg": maxdeg, "zeros": [w.to_json() for w in zeros]}
    return Verdict("lemma459", ok, None if ok else {**info, "expected": expected.to_json()}, None, info)


def check_dim_homomorphism(rule: LevelRule, ctx: QContext | None = None) -> Verdict:
    """``sum_mu N_mu d_mu = d_lam d_V`` for every label ``lam`` of the level.

    Uses ``q = zeta_{2(k+12)}`` by default, in exact cyclotomic arithmetic.
    """
    if rule.k is None:
        raise ValueError("the homomorphism check runs over the finite label set of a level")
    ctx = ctx or CycloContext(2 * (rule.k + 12), 1)
    admissible_q(rule).require(ctx)
    dV = qdim(Weight(1, 0), ctx)
    labels = alcove_weights(rule)
    for lam in labels:
        total = ctx.zero()
        for mu, c in tensor_V(lam, rule).items():
            total = total + ctx.from_int(c) * qdim(mu, ctx)
        if not ctx.equal(total, qdim(lam, ctx) * dV):
            return Verdict("dim_homomorphism", False, {"lambda": lam.to_json(), "rule": str(rule)})
    return Verdict("dim_homomorphism", True, info={"labels": len(labels), "q": ctx.describe()})


def check_dim_recursion(rule: LevelRule, maxdeg: int = 6, ctx: QContext | None = None) -> Verdict:
    """Dimensions rebuilt from ``d_[1,0]`` and ``d_[1,1]`` agree with the product formula."""
    if ctx is None and rule.k is not None:
        ctx = CycloContext(2 * (rule.k + 12), 1)
    try:
        rep = dim_recursion_check(rule, maxdeg, ctx)
    except Mismatch as exc:
        return Verdict("dim_recursion", False, {"weight": exc.witness.to_json(), "message": str(exc)})
    return Verdict("dim_recursion", True, info=rep.to_json())


def report(rep: BraidRepresentation, tol: float = 1e-9, burnside: bool = True) -> list[Verdict]:
    """Run every applicable representation check."""
    out = [check_braid_relations(rep, tol), check_fulltwist(rep, tol), check_spectra(rep, tol),
           check_braidflip(rep, tol), check_markov(rep, tol)]
    if rep.mu.size >= rep.n - 1:
        out.append(check_cubic(rep, tol))
    if rep.mu.size == rep.n:
        out.append(check_tl(rep, tol))
    if burnside:
        out.append(check_burnside(rep))
    return out


def report_json(verdicts: list[Verdict]) -> str:
    return json.dumps([v.to_json() for v in verdicts], indent=2)
