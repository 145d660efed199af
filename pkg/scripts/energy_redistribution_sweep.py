#!/usr/bin/env python3
"""Sweep the electrostatic-shift ratio over (n, z0) and print CSV.

The ratio dE/V^es should sit on the analytic curve (n^2-1)/(2n^2) at every
height; the per-side columns show how the left/right mode families share it.
"""
import argparse
import sys

import numpy as np

from halfspace_qed.energy import second_order_shift
from halfspace_qed.medium import Medium
from halfspace_qed.spectral import QuadratureSpec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-min", type=float, default=1.1)
    parser.add_argument("--n-max", type=float, default=5.0)
    parser.add_argument("--n-count", type=int, default=9)
    parser.add_argument("--z0", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    args = parser.parse_args()

    print("n,z0,delta_e,v_es,ratio,expected_ratio,ratio_error,left_share")
    spec = QuadratureSpec()
    for n in np.linspace(args.n_min, args.n_max, args.n_count):
        for z0 in args.z0:
            s = second_order_shift(1.0, Medium(float(n)), float(z0), spec)
            left_share = s.left_part / s.delta_e if s.delta_e else 0.0
            print(f"{n:.6g},{z0:.6g},{s.delta_e:.12e},{s.v_es:.12e},"
                  f"{s.ratio:.12f},{s.expected_ratio:.12f},"
                  f"{abs(s.ratio - s.expected_ratio):.3e},{left_share:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
