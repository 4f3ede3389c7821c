"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from dqi_lab import kernels
from dqi_lab.gf import enumerate_vectors


def workloads(rng):
    p, m, n = 7, 12, 5
    B = rng.integers(0, p, size=(m, n))
    mask = (rng.random((m, p)) < 0.5).astype(np.uint8)
    X = rng.integers(0, p, size=(20000, n))
    S = enumerate_vectors(p, 3)
    c = rng.normal(size=len(S)) + 1j * rng.normal(size=len(S))
    Z = rng.normal(size=(20000, 40))
    A = rng.integers(0, 101, size=(40, 40))
    b = rng.integers(0, 101, size=40)
    return {
        "satisfied_counts_all (7^5 x 12)": lambda k: k.satisfied_counts_all(B, mask, p),
        "score_batch (20000 x 12)": lambda k: k.score_batch(B, X, mask, p),
        "character_sum (343 terms, 7^3)": lambda k: k.character_sum(S, c, p),
        "elementary_symmetric (20000 x 40, k<=8)": lambda k: k.elementary_symmetric(Z, 8),
        "solve_mod (40 x 40 over F_101)": lambda k: k.solve_mod(A, b, 101),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels not built; run `python setup.py build_ext --inplace` first")
    names = sorted(impls)
    print(f"{'kernel':42s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads(np.random.default_rng(0)).items():
        times = {}
        for name in names:
            impl = impls[name]
            times[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        row = f"{label:42s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / max(times['cython'], 1e-9):11.1f}x"
        print(row)
    print(f"active backend: {kernels.BACKEND}")


if __name__ == "__main__":
    main()
