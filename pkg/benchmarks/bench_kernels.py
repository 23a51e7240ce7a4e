"""Time the compiled and pure-Python kernels on oracle-sized problems.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 4000]

Prints one line per (kernel, backend) with the best wall time and the
speed-up of the compiled build.
"""

import argparse
import timeit

import numpy as np

from wsnu import kernels


def sturm_case(size):
    rng = np.random.default_rng(0)
    d = rng.normal(size=size) + 2.0
    e2 = rng.normal(size=size - 1) ** 2
    lo, hi = d.min() - 4 * np.sqrt(e2.max()), d.max() + 4 * np.sqrt(e2.max())
    return lambda backend: kernels.bisect_eigenvalue(d, e2, size // 2, lo, hi, backend=backend)


def numerov_case(size):
    g = 4.0 + np.cos(np.linspace(0.0, 30.0, size + 1))
    h = 30.0 / size
    return lambda backend: kernels.numerov_march(g, h, 0, size, backend=backend)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=4000)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND}; size {args.size}")
    for name, make in (("sturm-bisection", sturm_case), ("numerov-march", numerov_case)):
        fn = make(args.size)
        best = {}
        for b in backends:
            fn(b)  # warm-up
            best[b] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
            print(f"{name:16s} {b:7s} {best[b] * 1e3:10.3f} ms")
        if len(best) == 2:
            print(f"{name:16s} speed-up {best['python'] / best['cython']:8.1f}x")


if __name__ == "__main__":
    main()
