"""Benchmark the jit kernels against their pure numpy fallbacks."""

import argparse
import time

import numpy as np

from sepgeom import _kernels as kernels


def best_of(fn, args, repeats: int) -> float:
    fn(*args)  # warm path: jit compile / allocator
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def gap_profile_args(rng, members: int, angles: int):
    t = np.linspace(0.0, 2.0 * np.pi, angles, endpoint=False)
    return (
        rng.uniform(-10.0, 10.0, members),
        rng.uniform(-10.0, 10.0, members),
        rng.uniform(0.3, 1.5, members),
        rng.uniform(0.8, 1.2, angles),
        rng.uniform(0.8, 1.2, angles),
        np.cos(t),
        np.sin(t),
    )


def simplex_covered_args(rng, samples: int, d: int):
    verts = np.eye(d) * 1.8
    return (verts, rng.random((samples, d)))


def pole_margins_args(rng, poles: int, caps: int):
    p = rng.normal(size=(poles, 3))
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    c = rng.normal(size=(caps, 3))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    return (p, c, np.sin(rng.uniform(0.05, 0.3, caps)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5, help="best-of timing repeats")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    cases = [
        ("gap_profile 64x65536", kernels._gap_profile_loop,
         kernels._gap_profile_numpy, gap_profile_args(rng, 64, 65536)),
        ("simplex_covered 1e6 d=3", kernels._simplex_covered_loop,
         kernels._simplex_covered_numpy, simplex_covered_args(rng, 1_000_000, 3)),
        ("pole_margins 2e5x32", kernels._pole_margins_loop,
         kernels._pole_margins_numpy, pole_margins_args(rng, 200_000, 32)),
    ]

    print(f"backend selected at import: {kernels.BACKEND}")
    header = f"{'kernel':<26}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, loop_fn, numpy_fn, case_args in cases:
        t_numpy = best_of(numpy_fn, case_args, args.repeats)
        if kernels.HAS_NUMBA:
            t_loop = best_of(loop_fn, case_args, args.repeats)
            print(
                f"{name:<26}{t_loop * 1e3:>12.2f}{t_numpy * 1e3:>12.2f}"
                f"{t_numpy / t_loop:>9.1f}x"
            )
        else:
            print(f"{name:<26}{'-':>12}{t_numpy * 1e3:>12.2f}{'-':>10}")


if __name__ == "__main__":
    main()
