"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run with:  python benchmarks/bench_kernels.py [--repeat 5]
The numpy lane always runs; the numba lane is skipped if numba is missing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ghzstab import _kernels as k
from ghzstab.bitstrings import parity_classes


def timeit(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_cases(rng):
    n_block = 11
    locs = rng.normal(size=(n_block, 2, 2)) + 1j * rng.normal(size=(n_block, 2, 2))
    s0 = parity_classes(n_block).s0
    yield (
        f"even_block n={n_block} ({s0.size}x{s0.size})",
        k.even_block_numpy,
        getattr(k, "even_block_numba", None),
        (locs, s0),
    )

    n_sum = 22
    vals = rng.normal(size=n_sum)
    yield (
        f"signed_sums n={n_sum} (2^{n_sum - 1} sums)",
        k.signed_sums_numpy,
        getattr(k, "signed_sums_numba_f8", None),
        (vals,),
    )

    n_par = 20
    cos_t = np.cos(rng.normal(size=n_par)).astype(np.complex128)
    msin_t = -1j * np.sin(rng.normal(size=n_par))
    yield (
        f"parity_product_sums n={n_par} (2^{n_par} terms)",
        k.parity_product_sums_numpy,
        getattr(k, "parity_product_sums_numba", None),
        (cos_t, msin_t),
    )

    n_char = 16
    vbits = rng.integers(0, 1 << n_char, size=100).astype(np.int64)
    yield (
        f"character_sums n={n_char} x 100 vectors",
        k.character_sums_numpy,
        getattr(k, "character_sums_numba", None),
        (vbits, n_char),
    )

    n_q = 10
    amps = rng.normal(size=1 << n_q) + 1j * rng.normal(size=1 << n_q)
    amps /= np.linalg.norm(amps)
    theta = rng.uniform(0, np.pi, size=n_q)
    up = np.stack(
        [np.array([np.cos(t / 2), np.sin(t / 2)], dtype=np.complex128)
         for t in theta]
    )
    down = np.stack(
        [np.array([-np.sin(t / 2), np.cos(t / 2)], dtype=np.complex128)
         for t in theta]
    )
    uniforms = rng.random((2000, n_q))
    yield (
        f"collapse_rounds n={n_q}, 2000 shots",
        k.collapse_rounds_numpy,
        getattr(k, "collapse_rounds_numba", None),
        (amps, up, down, uniforms),
    )


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"numba available: {k.HAVE_NUMBA}   active lane: "
          f"{'numba' if k.USE_NUMBA else 'numpy'} "
          f"(set {k.NUMBA_ENV_FLAG}=1 to force numpy)")
    if k.HAVE_NUMBA:
        t0 = time.perf_counter()
        k.warm_up()
        print(f"jit warm-up: {time.perf_counter() - t0:.2f} s\n")

    header = f"{'kernel':<42} {'numpy':>10} {'numba':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(0)
    for name, np_fn, nb_fn, bench_args in bench_cases(rng):
        t_np = timeit(np_fn, *bench_args, repeat=args.repeat)
        if nb_fn is not None:
            nb_fn(*bench_args)  # compile outside the timer
            t_nb = timeit(nb_fn, *bench_args, repeat=args.repeat)
            print(f"{name:<42} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<42} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
