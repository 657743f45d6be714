"""Compare the numba and numpy backends of the sign-search kernel.

    python benchmarks/bench_kernels.py [--sizes 4 8 12] [--free 6 10 12] [--repeat 5]

Both backends are called directly on the same random inputs, so the
environment variable ``G2BRAID_NO_NUMBA`` does not matter here.  The script
also times one full assembly with whichever backend is active.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from g2braid import _kernels
from g2braid.braidrep import assemble
from g2braid.lattice import Weight
from g2braid.qarith import FloatContext


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up (includes numba compilation on the first call)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12])
    parser.add_argument("--free", type=int, nargs="+", default=[6, 10, 12])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    have_numba = hasattr(_kernels, "_sign_patterns_numba")
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'m':>4} {'free':>5} {'masks':>7} {'numpy [s]':>11} {'numba [s]':>11} {'speedup':>8}")
    for m in args.sizes:
        for k in args.free:
            if k > m:
                continue
            prev = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            ahat = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            free = np.arange(k, dtype=np.int64)
            tol = 1e-9
            t_np = best_of(lambda: _kernels._sign_patterns_numpy(prev, ahat, free, tol), args.repeat)
            if have_numba:
                t_nb = best_of(lambda: _kernels._sign_patterns_numba(prev, ahat, free, tol), args.repeat)
                print(f"{m:>4} {k:>5} {1 << k:>7} {t_np:>11.5f} {t_nb:>11.5f} {t_np / t_nb:>7.1f}x")
            else:
                print(f"{m:>4} {k:>5} {1 << k:>7} {t_np:>11.5f} {'n/a':>11} {'':>8}")

    t0 = time.perf_counter()
    rep = assemble(Weight.from_young(3, 1), 5, ctx=FloatContext(1.1))
    print(f"assemble([3,1], n=5): dim {rep.dim}, {time.perf_counter() - t0:.3f} s")


if __name__ == "__main__":
    main()
