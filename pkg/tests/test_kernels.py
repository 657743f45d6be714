import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

from g2braid import _kernels


def _random_pair(rng, m):
    prev = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    ahat = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return prev, ahat


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 5))
def test_sign_pattern_backends_agree(seed, m):
    rng = np.random.default_rng(seed)
    prev, ahat = _random_pair(rng, m)
    free = np.arange(min(m, 4), dtype=np.int64)
    # a loose tolerance so some masks are accepted
    tol = float(rng.uniform(0.0, 50.0))
    ref = _kernels._sign_patterns_numpy(prev, ahat, free, tol)
    got = _kernels.sign_patterns(prev, ahat, free, tol)
    assert np.array_equal(np.sort(ref), np.sort(got))


def test_sign_patterns_find_a_braiding_sign_choice():
    # reduced Burau matrices of B_3 braid exactly
    t = 1.3
    s1 = np.array([[-t, 1.0], [0.0, 1.0]], dtype=complex)
    s2 = np.array([[1.0, 0.0], [t, -t]], dtype=complex)
    masks = _kernels.sign_patterns(s1, s2, np.array([1], dtype=np.int64), 1e-12)
    assert 0 in masks
    for mask in masks:
        e = np.diag([1.0, -1.0 if mask & 1 else 1.0])
        cand = e @ s2 @ e
        assert np.abs(s1 @ cand @ s1 - cand @ s1 @ cand).max() <= 1e-12


def test_braid_residual_backends_agree():
    rng = np.random.default_rng(0)
    a, b = _random_pair(rng, 6)
    ref = _kernels._braid_residual_numpy(a, b)
    assert abs(_kernels.braid_residual(a, b) - ref) < 1e-9 * max(1.0, ref)
    assert _kernels.braid_residual(np.zeros((0, 0)), np.zeros((0, 0))) == 0.0


def test_numpy_fallback_is_selected_by_environment():
    env = dict(os.environ, G2BRAID_NO_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", "from g2braid import _kernels; print(_kernels.BACKEND)"],
                          capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "numpy"
