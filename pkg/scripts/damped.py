"""Damped standing wave: single-mode concentration and the damping sweep.

    python3 scripts/damped.py
"""
import numpy as np

from pycod import analytic_field, cod
from pycod.analytic import hilbert_approx_error
from pycod.core import TimeGrid
from pycod.decompose import modal_energy_fractions
from pycod.generators import preset_field
from pycod.oracles import damped_amplitude


def main():
    print(" gamma  fraction    amplitude  closed form  index")
    for gamma in (0.0, 0.5, 1.0, 2.0, 4.0):
        field = preset_field("damped", gamma=gamma)
        res = cod(analytic_field(field))
        lead = res.modes[0]
        ref = 16.0 if gamma == 0 else damped_amplitude(16.0, gamma, field.time.duration)
        print(f"{gamma:6.2f}  {modal_energy_fractions(res)[0]:.6f}  {lead.amplitude:9.4f}"
              f"  {ref:11.4f}  {lead.travelling_index:.1e}")

    print("\nHilbert approximation error, central 80%, f = 5 Hz")
    for label, grid in (("17 periods", TimeGrid(0.0, 3.4 / 500, 500)),
                        ("17.5 periods", TimeGrid(0.0, 0.007, 500))):
        errs = [hilbert_approx_error(g, 2 * np.pi * 5, grid) for g in (0.0, 0.1, 0.5, 1.0, 2.0)]
        print(f"  {label:>12}: " + "  ".join(f"{e:.4f}" for e in errs)
              + "   (gamma 0, 0.1, 0.5, 1, 2)")


if __name__ == "__main__":
    main()
