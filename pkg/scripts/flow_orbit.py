"""Follow one GZ flow in time and report coordinate drift against the size of the orbit point."""

import argparse

import numpy as np

from gzsys.coords import phi
from gzsys.flows import FlowKey, flow
from gzsys.sampling import random_matrix, rng_from_seed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--t-max", type=float, default=2.0)
    parser.add_argument("--steps", type=int, default=9)
    args = parser.parse_args()

    x = random_matrix(rng_from_seed(args.seed), args.n)
    key = FlowKey(args.k, args.m)
    c = phi(x)
    print(f"{'t':>6} {'||y||_2':>10} {'phi drift':>10} {'relative':>10}")
    for t in np.linspace(0.0, args.t_max, args.steps):
        y = flow(x, key, t)
        size = np.linalg.norm(y, 2)
        drift = float(np.max(np.abs(phi(y) - c)))
        print(f"{t:6.2f} {size:10.2e} {drift:10.2e} {drift / max(1.0, size) ** args.n:10.2e}")


if __name__ == "__main__":
    main()
