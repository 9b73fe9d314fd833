"""Print the eight real symmetric matrices over the tower {0}, {-1, 1}, {-sqrt2, 0, sqrt2}."""

import argparse

import numpy as np

from gzsys.coords import coord_from_tower, phi, tower
from gzsys.fiber import is_jacobi, symmetric_fiber


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--precision", type=int, default=4)
    args = parser.parse_args()
    np.set_printoptions(precision=args.precision, suppress=True)

    s = np.sqrt(2.0)
    c = coord_from_tower(tower([0], [-1, 1], [-s, 0, s]))
    fib = symmetric_fiber(c)
    for i, x in enumerate(fib.members):
        drift = np.max(np.abs(phi(x) - c))
        print(f"signs {fib.signs(i)}  jacobi={is_jacobi(x)}  phi drift {drift:.1e}")
        print(np.real(x))
    print(f"{len(fib)} members, {sum(is_jacobi(x) for x in fib.members)} Jacobi")


if __name__ == "__main__":
    main()
