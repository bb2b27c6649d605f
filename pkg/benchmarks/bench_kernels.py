"""Compare the compiled and numpy kernel backends.

Times each kernel on representative shapes, then the two reconstruction
algorithms end to end under each backend.

    python benchmarks/bench_kernels.py --repeat 20
"""

import argparse
import time

import numpy as np

from fvsampling import kernels
from fvsampling.design import build_design
from fvsampling.field import decode
from fvsampling.recovery import reconstruct
from fvsampling.spectral import random_sparse_spectrum, sample_signal


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(rng):
    design = build_design(5, 6, 2)
    minv = design.family.inverse[0]
    labels = decode(np.arange(3), 5, design.params.h)
    return [
        ("coset_dft 153x25", "coset_dft", (rng.normal(size=(153, 25)) + 1j * rng.normal(size=(153, 25)), 5, 2)),
        ("coset_dft 13x343", "coset_dft", (rng.normal(size=(13, 343)) + 1j * rng.normal(size=(13, 343)), 7, 3)),
        ("coset_members 3x625", "coset_members", (minv, labels, 5)),
        ("decode 204x3 p=5", "decode_one_sparse_batch", (rng.normal(size=(204, 3)) + 1j * rng.normal(size=(204, 3)), 5)),
        ("decode 500x7 p=101", "decode_one_sparse_batch", (rng.normal(size=(500, 7)) + 1j * rng.normal(size=(500, 7)), 101)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    avail = kernels.backends()
    names = sorted(avail)
    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names))
    for label, fn, fargs in kernel_cases(rng):
        times = [best_of(lambda m=avail[n]: getattr(m, fn)(*fargs), args.repeat) for n in names]
        print(f"{label:<24}" + "".join(f"{t * 1e6:>10.1f}us" for t in times))

    print()
    print(f"{'end to end (p,r,t)':<24}" + "".join(f"{n + '/' + v:>16}" for n in names for v in ("alg1", "alg2")))
    for p, r, t in [(5, 6, 2), (7, 4, 3), (5, 4, 3)]:
        design = build_design(p, r, t)
        signal = random_sparse_spectrum(p, r, t, rng)
        tables = {v: sample_signal(signal, design.sampling_set(v)) for v in ("gamma1", "gamma2")}
        cells = []
        for n in names:
            kernels.use(n)
            for v in ("gamma1", "gamma2"):
                cells.append(best_of(lambda v=v: reconstruct(tables[v], design, v), args.repeat))
        print(f"{str((p, r, t)):<24}" + "".join(f"{c * 1e3:>14.3f}ms" for c in cells))


if __name__ == "__main__":
    main()
