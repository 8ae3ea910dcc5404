"""Compare the compiled GF(p) kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from kalvar import _kernels_py as py

try:
    from kalvar import _ckernels as cy
except ImportError:
    cy = None


def rank_case(rng, nrows, ncols, p):
    return [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]


def invariant_free_case(rng, d, p):
    # random d x d block almost never has an invariant subspace of dim s over GF(p)
    # for every s, so the search walks most of the Grassmannian
    while True:
        A = [[rng.randrange(p) for _ in range(d)] for _ in range(d)]
        if py.find_invariant_subspace(A, d, 1, p) is None:
            return A


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    p = 101

    cases = []
    M = rank_case(rng, 60, 60, p)
    cases.append(("rank 60x60 mod 101", lambda k: k.rank_mod_p(M, 60, p)))
    K = rank_case(rng, 24, 6, p)
    cases.append(("rank 24x6 mod 101 (small Kalman)", lambda k: k.rank_mod_p(K, 6, p)))
    N = rank_case(rng, 30, 40, p)
    cases.append(("nullspace 30x40 mod 101", lambda k: k.nullspace_mod_p(N, 40, p)))
    A3 = invariant_free_case(rng, 3, 3)
    cases.append(("subspace search d=3 s=1 GF(3)", lambda k: k.find_invariant_subspace(A3, 3, 1, 3)))
    A4 = invariant_free_case(rng, 4, 5)
    cases.append(("subspace search d=4 s=2 GF(5)", lambda k: k.find_invariant_subspace(A4, 4, 2, 5)))

    print(f"{'kernel':<36} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, fn in cases:
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{name:<36} {tp:>12.3f} {'n/a':>12} {'n/a':>8}")
            continue
        assert fn(py) == fn(cy), name
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<36} {tp:>12.3f} {tc:>12.3f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
