"""Time the numba kernels against the pure-numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. The first numba call of each
kernel is made before timing, so JIT compilation is excluded.
"""

import argparse
import timeit

import numpy as np

from pinindex._kernels import PRIME, _numba, _numpy


def cases(rng):
    blades = rng.integers(0, 1 << 12, size=1024, dtype=np.int64)
    m = rng.integers(-(1 << 62), 1 << 62, size=100_000, dtype=np.int64)
    n = rng.integers(-(1 << 62), 1 << 62, size=100_000, dtype=np.int64)
    mat = rng.integers(-50, 50, size=(120, 160), dtype=np.int64)
    return {
        "blade_product_signs 1024x1024": lambda impl: impl.blade_product_signs(blades, blades),
        "exterior_tables m=12": lambda impl: [impl.exterior_tables(12, i) for i in range(12)],
        "binomial_parities n=10^4": lambda impl: [impl.binomial_parities(q, q) for q in range(2, 10_001, 97)],
        "q_numerators 10^5, k=8": lambda impl: impl.q_numerators(m, n, 8),
        "rank_mod_p 120x160": lambda impl: impl.rank_mod_p(mat, PRIME),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        fn(_numba)  # compile
        t_np = min(timeit.repeat(lambda: fn(_numpy), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: fn(_numba), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:34s} {t_np:10.2f} {t_nb:10.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
