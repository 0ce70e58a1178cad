"""Compare the compiled Smith kernels against the pure-Python twin.

    python benchmarks/bench_kernels.py [--sizes 4 8 16 32] [--reps 50] [--seed 0]

Each run also checks that both backends return identical tuples.
"""

import argparse
import random
import sys
import timeit

from exactcat import _kernels_py

try:
    from exactcat import _kernels
except ImportError:
    _kernels = None


def random_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def bench(fn, mats, extra=()):
    return min(timeit.repeat(lambda: [fn(a, len(a), len(a[0]), *extra) for a in mats], number=1, repeat=3))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--reps", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=int, default=7)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(args.seed)
    print(f"{'kernel':<13}{'size':>6}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for size in args.sizes:
        mats = [random_matrix(rng, size, size) for _ in range(args.reps)]
        for name, extra in (("smith_int", ()), ("smith_mod_p", (args.p,))):
            py, cy = getattr(_kernels_py, name), getattr(_kernels, name)
            for a in mats[:5]:
                if py(a, size, size, *extra) != cy(a, size, size, *extra):
                    print(f"{name}: backends disagree at size {size}")
                    return 2
            t_py, t_cy = bench(py, mats, extra), bench(cy, mats, extra)
            print(f"{name:<13}{size:>6}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>10.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
