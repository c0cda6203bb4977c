"""Amplitude homology of the point, of the scalar complex, and reduced homology of small models."""
from __future__ import annotations

import argparse

from qhom.ncomplex import build_point_complex, build_scalar_complex, homology_report
from qhom.pairs import reduced_homology
from qhom.simplicial import boundary_model, simplex_model


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--orders", nargs="*", type=int, default=[2, 3, 5, 7])
    args = parser.parse_args()
    for order in args.orders:
        point = homology_report(build_point_complex(order, 2 * order))
        scalar = homology_report(build_scalar_complex(order))
        print(f"== N = {order} ==")
        print("point   nonzero (m, n):", point.nonzero())
        print("scalar  nonzero (m, n):", scalar.nonzero())
        for name, x in (("simplex2", simplex_model(2)), ("boundary3", boundary_model(3))):
            red = reduced_homology(x, order)
            print(f"reduced {name:9s} nonzero (m, n):", red.report.nonzero(), "pattern:", red.pattern, "splitting:", red.splitting_holds())
        print()


if __name__ == "__main__":
    main()
