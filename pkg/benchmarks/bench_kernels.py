"""Compare the compiled and numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N] [--size N]``.
Prints best-of-N wall time per call for each kernel and backend, the
speedup, and the largest disagreement between the two backends.
"""

import argparse
import math
import timeit

import numpy as np

from korenblum import kernels


def workloads(size, c):
    rng = np.random.default_rng(0)
    rho = rng.uniform(c, 1.0, size)
    theta = rng.uniform(0.0, math.pi, size)
    return {
        "f_bound": lambda b: kernels.f_bound(rho, c, backend=b),
        "bergman_integrand": lambda b: kernels.bergman_integrand(rho, c, backend=b),
        "circle_product": lambda b: kernels.circle_product(rho, theta, c, 12, backend=b),
        "tedious_excess": lambda b: kernels.tedious_excess(rho, theta, c, backend=b),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--c", type=float, default=0.21)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}; size={args.size}, best of {args.repeat}")
    print(f"{'kernel':<20}" + "".join(f"{b + ' (ms)':>16}" for b in backends) + f"{'speedup':>10}{'max diff':>12}")
    for name, fn in workloads(args.size, args.c).items():
        times = {}
        for b in backends:
            fn(b)
            times[b] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) * 1e3
        line = f"{name:<20}" + "".join(f"{times[b]:>16.3f}" for b in backends)
        if "cython" in times:
            diff = float(np.max(np.abs(fn("cython") - fn("python"))))
            line += f"{times['python'] / times['cython']:>9.1f}x{diff:>12.2e}"
        print(line)


if __name__ == "__main__":
    main()
