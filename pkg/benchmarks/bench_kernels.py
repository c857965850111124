"""Time the compiled table kernel against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--l-list 8,10,12] [--noise-p 0.2] [--repeat 5]

The two backends return bit-identical tables (asserted here on every run),
so the only difference worth reporting is speed.
"""

import argparse
import time

import numpy as np

from ecamine import _kernels_py
from ecamine.kernels import HAVE_COMPILED_KERNELS

if HAVE_COMPILED_KERNELS:
    from ecamine import _kernels


ALL_RULES = np.arange(256, dtype=np.int64)


def time_backend(fn, l, noise_p, seed, repeat):
    best = float("inf")
    table = None
    for _ in range(repeat):
        start = time.perf_counter()
        table = fn(l, ALL_RULES, noise_p=noise_p, seed=seed, noisy=noise_p > 0)
        best = min(best, time.perf_counter() - start)
    return best, table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--l-list", default="8,10,12")
    parser.add_argument("--noise-p", type=float, default=0.2)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    l_values = [int(tok) for tok in args.l_list.split(",")]

    if not HAVE_COMPILED_KERNELS:
        print("compiled kernel not built; timing the numpy fallback only")
    header = f"{'l':>3} {'noise':>6} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for l in l_values:
        for p in (0.0, args.noise_p):
            t_py, ref = time_backend(
                _kernels_py.cardinal_table, l, p, args.seed, args.repeat
            )
            if HAVE_COMPILED_KERNELS:
                t_c, table = time_backend(
                    _kernels.cardinal_table, l, p, args.seed, args.repeat
                )
                assert np.array_equal(ref, table), "backend outputs diverged"
                print(
                    f"{l:>3} {p:>6.2f} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms "
                    f"{t_py / t_c:>7.1f}x"
                )
            else:
                print(f"{l:>3} {p:>6.2f} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
