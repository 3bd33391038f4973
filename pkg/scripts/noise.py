"""Amplitude and travelling-index drift of the sloshing example under noise.

    python3 scripts/noise.py --seeds 5
"""
import argparse

import numpy as np

from pycod import analytic_field, cod
from pycod.generators import preset_field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--alpha1", type=float, default=0.5)
    args = ap.parse_args()

    print(" sigma   A1 mean  A1 std   A2 mean  index1 mean")
    for sigma in (0.0, 0.5, 1.0, 2.0, 5.0):
        rows = []
        for seed in range(args.seeds):
            res = cod(analytic_field(preset_field("sloshing", sigma=sigma, seed=seed,
                                                  alpha1=args.alpha1)))
            rows.append((res.modes[0].amplitude, res.modes[1].amplitude,
                         res.modes[0].travelling_index))
        a = np.array(rows)
        print(f"{sigma:6.2f}  {a[:, 0].mean():8.4f}  {a[:, 0].std():6.4f}  "
              f"{a[:, 1].mean():8.4f}  {a[:, 2].mean():11.4f}")


if __name__ == "__main__":
    main()
