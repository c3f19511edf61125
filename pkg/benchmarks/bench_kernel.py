"""Compare the pure-Python and Cython polynomial kernels.

Runs the same workload against both backends and prints a timing table:
dictionary-based multiplication of dense multivariate polynomials, plus a
shuffle-product workload through the public API.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import importlib
import random
import time

from shuffle_forge import _purekernel


def _load_fast():
    try:
        return importlib.import_module("shuffle_forge._fastkernel")
    except ImportError:
        return None


def _random_poly(rng, nvars, nterms, max_exp):
    out = {}
    for _ in range(nterms):
        nv = rng.randint(1, nvars)
        chosen = rng.sample(range(nvars), nv)
        key = []
        for v in sorted(chosen):
            key.extend((v, rng.randint(1, max_exp)))
        out[tuple(key)] = rng.randint(-9, 9) or 1
    return out


def bench_mul(kernel, polys, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in polys:
            kernel.poly_mul(a, b)
    return time.perf_counter() - t0


def bench_star(repeat):
    """Star-product workload through the public API (uses the active
    backend chosen at import time)."""
    from shuffle_forge.roots import RootSystem
    from shuffle_forge.shuffle import generator, star

    system = RootSystem("C", 3)
    t0 = time.perf_counter()
    for _ in range(repeat):
        acc = generator(system, 1, 2)
        for i, r in ((2, 1), (3, 0), (2, -1), (1, 1)):
            acc = star(acc, generator(system, i, r))
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    fast = _load_fast()
    rng = random.Random(2024)
    polys = [(_random_poly(rng, 6, 60, 4), _random_poly(rng, 6, 60, 4))
             for _ in range(40)]

    t_pure = bench_mul(_purekernel, polys, args.repeat)
    print(f"poly_mul  pure:   {t_pure:8.3f}s")
    if fast is not None:
        t_fast = bench_mul(fast, polys, args.repeat)
        print(f"poly_mul  cython: {t_fast:8.3f}s  (speedup x{t_pure / t_fast:.2f})")
        for a, b in polys[:5]:
            assert _purekernel.poly_mul(a, b) == fast.poly_mul(a, b)
        print("cross-check: pure and cython kernels agree")
    else:
        print("cython kernel not built; only the pure backend was timed")

    from shuffle_forge.polyvars import KERNEL_BACKEND
    t_star = bench_star(args.repeat)
    print(f"star workload ({KERNEL_BACKEND} backend): {t_star:8.3f}s")


if __name__ == "__main__":
    main()
