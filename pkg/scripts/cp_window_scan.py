#!/usr/bin/env python3
"""Locate the complete-positivity window of uniform-dephasing channels.

For identity crosstalk the window has the closed form [-d/(d-1), 0]; this
script finds the lower edge by bisection on the Choi-block spectrum and
prints it next to the closed form, for d = 2..7 by default.
"""

import argparse

import numpy as np

from mcfqc.channel import cp_boundary_uniform_alpha


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7])
    parser.add_argument("--precision", type=float, default=1e-12)
    args = parser.parse_args()

    print(f"{'d':>3} {'bisection':>20} {'closed form':>20} {'error':>12}")
    for d in args.dims:
        located = cp_boundary_uniform_alpha(np.eye(d), precision=args.precision)
        exact = -d / (d - 1)
        print(f"{d:>3} {located:>20.12f} {exact:>20.12f} {abs(located - exact):>12.2e}")


if __name__ == "__main__":
    main()
