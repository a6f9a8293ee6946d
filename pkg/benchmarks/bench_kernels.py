"""Time the batched edge test on the numpy and numba routes.

    FAREY_NUMBA=1 python3 benchmarks/bench_kernels.py
"""
import os
import time

import numpy as np

from farey import _kernels


def bench(use: str, d: int, a, b, reps: int = 5) -> float:
    _kernels.det_norm(d, a[:10], b[:10], use)  # warm-up (jit compile)
    t0 = time.perf_counter()
    for _ in range(reps):
        _kernels.det_norm(d, a, b, use)
    return (time.perf_counter() - t0) / reps


def main(n: int = 2_000_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.integers(-200, 200, (n, 4))
    b = rng.integers(-200, 200, (n, 4))
    routes = ["numpy"] + (["numba"] if _kernels.backend() == "numba" else [])
    if os.environ.get("FAREY_NUMBA") != "1":
        print("numba route skipped (set FAREY_NUMBA=1)")
    for d in (1, 2, 3, 7, 11):
        row = [f"d={d:2d}"]
        ref = _kernels.det_norm(d, a, b, "numpy")
        for use in routes:
            dt = bench(use, d, a, b)
            assert (_kernels.det_norm(d, a, b, use) == ref).all()
            row.append(f"{use} {n / dt / 1e6:7.1f} M rows/s")
        print("  ".join(row))


if __name__ == "__main__":
    main()
