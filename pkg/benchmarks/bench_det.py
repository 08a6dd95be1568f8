"""Batched determinants over Z/m: compiled numba loops versus vectorised numpy.

    python benchmarks/bench_det.py [--batch 20000] [--n 4] [--modulus 1000003]

Both kernels are checked against each other before timing.  The first numba
call includes JIT compilation and is reported separately.
"""
import argparse
import time

import numpy as np

from quadnorm import _kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--modulus", type=int, default=1_000_003)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    mats = rng.integers(0, args.modulus, size=(args.batch, args.n, args.n), dtype=np.int64)
    m = args.modulus

    ref = _kernels._det_mod_batch_numpy(mats, m)
    if _kernels._det_mod_batch_numba is None:
        print("numba not installed; numpy path only")
    else:
        t0 = time.perf_counter()
        got = _kernels._det_mod_batch_numba(mats[:1], m)
        compile_s = time.perf_counter() - t0
        got = _kernels._det_mod_batch_numba(mats, m)
        assert np.array_equal(got, ref), "kernels disagree"
        t_numba = _time(lambda: _kernels._det_mod_batch_numba(mats, m), args.repeat)
        print(f"numba  first call (jit) {compile_s:8.3f} s")
        print(f"numba  {args.batch} x {args.n}x{args.n}    {t_numba:8.4f} s")
    t_numpy = _time(lambda: _kernels._det_mod_batch_numpy(mats, m), args.repeat)
    print(f"numpy  {args.batch} x {args.n}x{args.n}    {t_numpy:8.4f} s")


if __name__ == "__main__":
    main()
