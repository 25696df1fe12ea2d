"""Compare the Cython kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--degree 8] [--points 200000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from hmtk import kernels


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--centers", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    cplx = lambda n: rng.normal(size=n) + 1j * rng.normal(size=n)
    h, g = cplx(args.degree + 1), cplx(args.degree + 1)
    z = 0.99 * np.sqrt(rng.uniform(size=args.points)) * np.exp(2j * np.pi * rng.uniform(size=args.points))
    a = z[: args.centers]

    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    cases = {
        "eval_fields": lambda b: kernels.eval_fields(h, g, z, backend=b),
        "chart_moments": lambda b: kernels.chart_moments(h, g, a, backend=b),
    }
    print(f"degree={args.degree} points={args.points} centers={args.centers} "
          f"default backend={kernels.BACKEND}")
    for name, fn in cases.items():
        times = {b: _best(lambda: fn(b), args.repeat) for b in backends}
        line = "  ".join(f"{b}={t * 1e3:8.2f} ms" for b, t in times.items())
        if len(times) == 2:
            line += f"  speedup={times['python'] / times['cython']:.1f}x"
        print(f"{name:14s} {line}")
    if len(backends) == 2:
        for name, fn in cases.items():
            ref, fast = fn("python"), fn("cython")
            ref = ref if isinstance(ref, tuple) else (ref,)
            fast = fast if isinstance(fast, tuple) else (fast,)
            err = max(float(np.max(np.abs(x - y) / (1 + np.abs(x)))) for x, y in zip(ref, fast))
            print(f"{name:14s} max rel. difference {err:.2e}")


if __name__ == "__main__":
    main()
