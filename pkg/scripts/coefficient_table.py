"""Print the homotopy-operator coefficient table and its column-sum checks for several N."""
from __future__ import annotations

import argparse

from qhom.affine import coefficient_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("orders", nargs="*", type=int, default=[3, 5, 7])
    args = parser.parse_args()
    for order in args.orders:
        table = coefficient_table(order)
        print(f"== N = {order} ==")
        print(table.render())
        print("checks:", ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in table.checks().items()))
        print()


if __name__ == "__main__":
    main()
