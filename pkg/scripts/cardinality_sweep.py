"""Count real symmetric fiber members over random interlacing towers, and time the solve."""

import argparse
import time

import numpy as np

from gzsys.coords import coord_from_tower, phi
from gzsys.fiber import symmetric_fiber
from gzsys.linalg import d
from gzsys.sampling import random_interlacing_tower, rng_from_seed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-max", type=int, default=5)
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    rng = rng_from_seed(args.seed)
    print(f"{'n':>2} {'expected':>8} {'counts':>12} {'max|Im|':>9} {'max drift':>9} {'sec':>6}")
    for n in range(2, args.n_max + 1):
        start = time.perf_counter()
        counts, worst_im, worst_phi = set(), 0.0, 0.0
        for _ in range(args.reps):
            c = coord_from_tower(random_interlacing_tower(rng, n))
            fib = symmetric_fiber(c)
            counts.add(len(fib))
            for x in fib.members:
                worst_im = max(worst_im, float(np.max(np.abs(np.imag(x)))))
                worst_phi = max(worst_phi, float(np.max(np.abs(phi(x) - c))))
        elapsed = time.perf_counter() - start
        print(f"{n:>2} {2 ** d(n - 1):>8} {str(sorted(counts)):>12} {worst_im:9.1e} {worst_phi:9.1e} {elapsed:6.2f}")


if __name__ == "__main__":
    main()
