"""How often does the N-th power of the Hom differential vanish on random morphisms?"""
from __future__ import annotations

import argparse
import random

from qhom.generators import random_morphism
from qhom.ncomplex import hom_differential
from qhom.simplicial import boundary_model, simplex_model, to_ncomplex


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--orders", nargs="*", type=int, default=[2, 3, 5])
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    models = {"simplex2": simplex_model(2), "boundary3": boundary_model(3)}
    for order in args.orders:
        rng = random.Random(f"{args.seed}:{order}")
        for name, x in models.items():
            c = to_ncomplex(x, order, 2)
            by_shift = {}
            for _ in range(args.trials):
                shift = rng.randint(-1, 1)
                g = random_morphism(rng, c, c, shift)
                for _ in range(order):
                    g = hom_differential(g)
                hits, total = by_shift.get(shift, (0, 0))
                by_shift[shift] = (hits + g.is_zero(), total + 1)
            summary = ", ".join(f"shift {s:+d}: {h}/{t}" for s, (h, t) in sorted(by_shift.items()))
            print(f"N = {order}  {name:10s} D^N = 0 on {summary}")


if __name__ == "__main__":
    main()
