"""Numeric inner loops used by assembly: numba-compiled, with a numpy fallback.

The fallback is selected by setting ``G2BRAID_NO_NUMBA=1`` in the environment
(or automatically when numba cannot be imported).  Both backends return
identical results; ``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "sign_patterns", "braid_residual"]

_WANT_NUMBA = os.environ.get("G2BRAID_NO_NUMBA", "").strip() not in ("1", "true", "yes")

try:  # pragma: no cover - import guard
    if not _WANT_NUMBA:
        raise ImportError("numba disabled by G2BRAID_NO_NUMBA")
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

BACKEND = "numba" if njit is not None else "numpy"


def _sign_patterns_numpy(prev, ahat, free, tol, chunk=2048):
    m = prev.shape[0]
    k = free.shape[0]
    total = 1 << k
    hits = []
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        signs = np.ones((masks.size, m))
        for j in range(k):
            bit = (masks >> j) & 1
            signs[:, free[j]] = 1.0 - 2.0 * bit
        s = signs[:, :, None] * ahat[None, :, :] * signs[:, None, :]
        lhs = prev @ s @ prev
        rhs = s @ prev @ s
        res = np.abs(lhs - rhs).reshape(masks.size, -1).max(axis=1)
        hits.append(masks[res <= tol])
    return np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)


def _braid_residual_numpy(a, b):
    return float(np.abs(a @ b @ a - b @ a @ b).max()) if a.size else 0.0


if njit is not None:

    @njit(cache=True)
    def _sign_patterns_numba(prev, ahat, free, tol):  # pragma: no cover - compiled
        m = prev.shape[0]
        k = free.shape[0]
        total = 1 << k
        out = np.empty(total, dtype=np.int64)
        count = 0
        signs = np.ones(m)
        s = np.empty((m, m), dtype=np.complex128)
        t1 = np.empty((m, m), dtype=np.complex128)
        t2 = np.empty((m, m), dtype=np.complex128)
        for mask in range(total):
            for i in range(m):
                signs[i] = 1.0
            for j in range(k):
                if (mask >> j) & 1:
                    signs[free[j]] = -1.0
            for i in range(m):
                for j in range(m):
                    s[i, j] = signs[i] * ahat[i, j] * signs[j]
            # t1 = prev @ s, t2 = s @ prev
            for i in range(m):
                for j in range(m):
                    acc1 = 0j
                    acc2 = 0j
                    for l in range(m):
                        acc1 += prev[i, l] * s[l, j]
                        acc2 += s[i, l] * prev[l, j]
                    t1[i, j] = acc1
                    t2[i, j] = acc2
            worst = 0.0
            for i in range(m):
                for j in range(m):
                    lhs = 0j
                    rhs = 0j
                    for l in range(m):
                        lhs += t1[i, l] * prev[l, j]
                        rhs += t2[i, l] * s[l, j]
                    d = abs(lhs - rhs)
                    if d > worst:
                        worst = d
                if worst > tol:
                    break
            if worst <= tol:
                out[count] = mask
                count += 1
        return out[:count]

    @njit(cache=True)
    def _braid_residual_numba(a, b):  # pragma: no cover - compiled
        if a.size == 0:
            return 0.0
        lhs = a @ b @ a
        rhs = b @ a @ b
        return np.abs(lhs - rhs).max()


def sign_patterns(prev: np.ndarray, ahat: np.ndarray, free: np.ndarray, tol: float) -> np.ndarray:
    """Bit masks ``mask`` for which ``S = E A E`` braids with ``prev``.

    ``E`` is diagonal with ``E[free[j]] = -1`` when bit ``j`` of ``mask`` is
    set and ``+1`` otherwise.  The braid residual
    ``max|prev S prev - S prev S|`` must not exceed ``tol``.
    """
    prev = np.ascontiguousarray(prev, dtype=np.complex128)
    ahat = np.ascontiguousarray(ahat, dtype=np.complex128)
    free = np.ascontiguousarray(free, dtype=np.int64)
    if BACKEND == "numba":
        return _sign_patterns_numba(prev, ahat, free, float(tol))
    return _sign_patterns_numpy(prev, ahat, free, float(tol))


def braid_residual(a: np.ndarray, b: np.ndarray) -> float:
    """``max|aba - bab|`` for square complex matrices."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    if BACKEND == "numba":
        return float(_braid_residual_numba(a, b))
    return _braid_residual_numpy(a, b)
