"""Compare the numba and numpy Schmidt-coefficient kernels.

    python benchmarks/bench_kernels.py --samples 5000

Both kernels see the same batch of states; the script reports wall time per
state and the largest disagreement between them.
"""

import argparse
import time

import numpy as np

from gaussggm import _kernels, haar
from gaussggm._accel import HAVE_NUMBA
from gaussggm.ggm import bipartition_subsets


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = func()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=5000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--nu-bar", type=float, default=2.6)
    args = parser.parse_args()

    cases = [(n, False) for n in range(3, 9)] + [(50, True)]
    print(f"{'n':>4} {'mode':>7} {'subsets':>8} {'numpy us':>10} {'numba us':>10} {'speedup':>8} {'max |diff|':>11}")
    for n, single in cases:
        spec = haar.RandomStateSpec(n, args.nu_bar)
        count = args.samples if n < 20 else max(1, args.samples // 5)
        sigmas = haar.sample_states(spec, count, haar.make_rng(0))
        table, sizes = _kernels.subset_table(bipartition_subsets(n, single))
        t_np, (lam_np, _) = best_of(lambda: _kernels.max_schmidt_numpy(sigmas, table, sizes), args.repeat)
        row = f"{n:>4} {'single' if single else 'full':>7} {len(sizes):>8} {1e6 * t_np / count:>10.2f}"
        if HAVE_NUMBA:
            _kernels.max_schmidt_numba(sigmas[:1], table, sizes)  # compile
            t_nb, (lam_nb, _) = best_of(lambda: _kernels.max_schmidt_numba(sigmas, table, sizes), args.repeat)
            diff = np.max(np.abs(lam_np - lam_nb))
            row += f" {1e6 * t_nb / count:>10.2f} {t_np / t_nb:>8.1f} {diff:>11.1e}"
        else:
            row += f" {'n/a':>10} {'n/a':>8} {'n/a':>11}"
        print(row)


if __name__ == "__main__":
    main()
