"""Measure sum_k border^k K border^(N-1-k) on random affine chains, degree by degree.

For every degree the script counts how often the sum equals the chain itself,
how often it vanishes, and how often it equals sigma - P_hat(eta(sigma)).
"""
from __future__ import annotations

import argparse
import random

from qhom.affine import default_iota, homotopy_residual
from qhom.generators import random_chain

BASEPOINT = (0, 0)


def survey(order: int, per_degree: int, seed: int) -> None:
    rng = random.Random(f"{seed}:{order}")
    iota = default_iota(order, BASEPOINT)
    print(f"N = {order}   degree: identity / zero / id - P_hat eta   (of {per_degree})")
    for deg in range(0, 2 * order + 1):
        ident = zero = residual = 0
        for _ in range(per_degree):
            pool = [tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(4)]
            sigma = random_chain(rng, deg, 2, order, terms=rng.randint(1, 2), pool=pool)
            lhs, _, diff = homotopy_residual(sigma, iota, order, BASEPOINT)
            ident += lhs == sigma
            zero += lhs.is_zero()
            residual += diff.is_zero()
        print(f"  {deg:2d}: {ident:3d} / {zero:3d} / {residual:3d}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--orders", nargs="*", type=int, default=[2, 3, 5])
    parser.add_argument("--per-degree", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    for order in args.orders:
        survey(order, args.per_degree, args.seed)


if __name__ == "__main__":
    main()
