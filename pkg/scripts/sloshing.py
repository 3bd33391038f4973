"""Two-mode sloshing field: amplitudes, travelling indices and mode shapes.

    python3 scripts/sloshing.py --alpha1 0.5
"""
import argparse

import numpy as np

from pycod import analytic_field, cod
from pycod.acceptance import overlap
from pycod.decompose import modal_energy_fractions
from pycod.generators import airy_omega, preset_field
from pycod.spectrum import coefficient_spectrum, point_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha1", type=float, default=0.0)
    ap.add_argument("--grid", choices=("uniform", "chebyshev"), default="uniform")
    args = ap.parse_args()

    name = "sloshing" if args.grid == "uniform" else "sloshing-chebyshev"
    field = preset_field(name, alpha1=args.alpha1)
    res = cod(analytic_field(field))
    fr = modal_energy_fractions(res)

    for n in (1, 3):
        print(f"Airy f_{n} = {airy_omega(n, 400, 100) / (2 * np.pi):.4f} Hz")
    spec = point_spectrum(field, 0)
    top = spec.local_maxima()
    top = top[np.argsort(spec.power[top])[::-1][:2]]
    print("point spectrum at x = {:.0f} mm: ".format(field.space.positions[0])
          + ", ".join(f"{spec.power[k]:.3f} @ {spec.frequencies[k]:.3f} Hz" for k in top))

    x = field.space.positions
    for j, m in enumerate(res.modes[:3]):
        f = coefficient_spectrum(m, field.time).peak()[0]
        match = ""
        if j < 2:
            shape = np.sin((2 * j + 1) * np.pi * x / 400)
            match = f"  overlap {overlap(res.space, m.spatial_mode, shape):.6f}"
        print(f"mode {j + 1}: fraction {fr[j]:.3e}  amplitude {m.amplitude:8.4f}  "
              f"index {m.travelling_index:.4f}  f {f:.3f} Hz{match}")


if __name__ == "__main__":
    main()
