"""Wall-clock comparison of the numba kernels against the numpy fallback.

Runs the three hot paths through the public API under both backends,
checks that the results are bit-identical, and prints a timing table.
A warm-up pass (excluded from timing) absorbs JIT compilation.

Run:

    python benchmarks/bench_backends.py [--repeats N] [--families N]
"""

import argparse
import time

import numpy as np

from crossfam import SetFamily, bounded_family, compress_to_fixed_point, max_product_pair
from crossfam import backends


def timed(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_compress(n_families, rng):
    fams = []
    for _ in range(n_families):
        n = int(rng.integers(4, 11))
        size = int(rng.integers(0, 26))
        fams.append(SetFamily.from_bits(
            n, (int(m) for m in rng.integers(0, 1 << n, size))))

    def run():
        return [compress_to_fixed_point(f)[0] for f in fams]

    return f"compress_to_fixed_point x{n_families}", run


def bench_exhaustive():
    ga, gb = bounded_family(4, 4), bounded_family(4, 4)

    def run():
        return max_product_pair(ga, gb, strategy="exhaustive")

    return "exhaustive scan 2^16 x 16", run


def bench_galois(rng):
    n = 6
    ga = SetFamily.from_bits(n, (int(m) for m in rng.choice(1 << n, 20, replace=False)))
    gb = SetFamily.from_bits(n, (int(m) for m in rng.choice(1 << n, 40, replace=False)))

    def run():
        return max_product_pair(ga, gb, strategy="galois")

    return "galois scan 2^20 over 40", run


def bench_antichain():
    ga, gb = bounded_family(5, 5), bounded_family(5, 5)

    def run():
        return max_product_pair(ga, gb, strategy="antichain")

    return "antichain scan 7581 x 32", run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--families", type=int, default=2000)
    args = parser.parse_args()

    rng = np.random.default_rng(1729)
    cases = [
        bench_compress(args.families, rng),
        bench_exhaustive(),
        bench_galois(rng),
        bench_antichain(),
    ]

    print(f"{'case':<34} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for name, fn in cases:
        rows = {}
        for backend in ("numba", "numpy"):
            backends.set_backend(backend)
            try:
                fn()  # warm-up (JIT compile / allocator)
                rows[backend] = timed(fn, args.repeats)
            finally:
                backends.set_backend(None)
        (t_nb, out_nb), (t_np, out_np) = rows["numba"], rows["numpy"]
        assert out_nb == out_np, f"backend results differ for {name}"
        print(f"{name:<34} {t_nb * 1e3:>8.1f}ms {t_np * 1e3:>8.1f}ms "
              f"{t_np / t_nb:>8.1f}x")
    print("results identical across backends")


if __name__ == "__main__":
    main()
