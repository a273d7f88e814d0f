"""Regenerate the frozen reference data in this directory.

Run only after a deliberate, reviewed change of the numerics:

    python tests/golden/make_golden.py
"""

import json
from pathlib import Path

import numpy as np

from hardyshell import audit, poles
from hardyshell.scatter import PotentialSpec

HERE = Path(__file__).parent
SHELL = PotentialSpec(1.0, 2.0, 1.0)
POLE_REGION = (0.0, 4.0, -1.0, 0.0)
KERNEL_R = (0.0, 0.5, 1.5, 3.0, 10.0)
GROWTH_S = np.linspace(1.0, 100.0, 34)
GROWTH_EXTENT = 3.0


def growth_phi(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    m = (r > 0.0) & (r < GROWTH_EXTENT)
    out[m] = np.exp(-1.0 / (r[m] * (GROWTH_EXTENT - r[m])))
    return out


def pole_document():
    rep = poles.search_poles(SHELL, poles.Rectangle(*POLE_REGION))
    return {
        "region": list(POLE_REGION),
        "winding": rep.winding,
        "poles": [{"k": [repr(p.k_pole.real), repr(p.k_pole.imag)]} for p in rep.poles],
    }


def kernel_report():
    return audit.kernel_bound_audit(SHELL, audit.lower_half_plane_grid(), KERNEL_R)


def growth_report():
    return audit.wavefunction_growth_profile(SHELL, growth_phi, audit.NEGATIVE_AXIS, GROWTH_S, GROWTH_EXTENT)


def main():
    (HERE / "poles.json").write_text(json.dumps(pole_document(), indent=1) + "\n")
    (HERE / "bounds_kernel.csv").write_text(kernel_report().to_csv())
    (HERE / "growth_negative_axis.csv").write_text(growth_report().to_csv())


if __name__ == "__main__":
    main()
