"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--rows 200000] [--dim 4] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from qdist import _kernels_py, kernels

try:
    from qdist import _kernels as compiled
except ImportError:
    compiled = None

KERNELS = ("jsd_rows", "hellinger_sq_rows", "bhattacharyya_rows", "kl_rows")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000)
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    p = rng.dirichlet(np.ones(args.dim), args.rows)
    q = rng.dirichlet(np.ones(args.dim), args.rows)
    print(f"active backend: {kernels.BACKEND}; rows={args.rows} dim={args.dim}")
    if compiled is None:
        print("compiled extension not built; timing the numpy fallback only")
    print(f"{'kernel':<22}{'numpy ms':>12}{'cython ms':>12}{'speedup':>10}{'max |diff|':>14}")
    for name in KERNELS:
        py_fn = getattr(_kernels_py, name)
        t_py = min(timeit.repeat(lambda: py_fn(p, q), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:<22}{t_py:>12.2f}{'-':>12}{'-':>10}{'-':>14}")
            continue
        c_fn = getattr(compiled, name)
        t_c = min(timeit.repeat(lambda: c_fn(p, q), number=1, repeat=args.repeat)) * 1e3
        diff = np.max(np.abs(np.asarray(c_fn(p, q)) - py_fn(p, q)))
        print(f"{name:<22}{t_py:>12.2f}{t_c:>12.2f}{t_py / t_c:>10.1f}{diff:>14.2e}")


if __name__ == "__main__":
    main()
