"""Frequency-modulated cubic shape: sideband heights against Bessel weights.

    python3 scripts/fm_sidebands.py --epsilon 1.5
"""
import argparse

from pycod import analytic_field, cod
from pycod.generators import jacobi_anger_lines, preset_field
from pycod.spectrum import coefficient_spectrum, nearest_bin


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--epsilon", type=float, default=1.0)
    args = ap.parse_args()

    field = preset_field("fm-cubic", epsilon=args.epsilon)
    res = cod(analytic_field(field))
    lead = res.modes[0]
    print(f"leading mode: index {lead.travelling_index:.2e}, "
          f"energy share {lead.energy / res.total_energy:.12f}")

    spec = coefficient_spectrum(lead, field.time)
    lines = jacobi_anger_lines(1.0, 0.2, args.epsilon)
    carrier = next(line for line in lines if line.order == 0)
    c_height = spec.power[nearest_bin(spec, 1.0)]
    print(" order  freq   measured ratio  |J_n/J_0|")
    for line in lines:
        if abs(line.order) > 3 or line.frequency <= 0:
            continue
        ratio = spec.power[nearest_bin(spec, line.frequency)] / c_height
        expected = (line.weight / carrier.weight) ** 0.5 if carrier.weight else float("nan")
        print(f"{line.order:6d}  {line.frequency:4.2f}  {ratio:14.4f}  {expected:9.4f}")


if __name__ == "__main__":
    main()
