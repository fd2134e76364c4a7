"""Drude, plasma and nonlocal pressures between identical gold plates.

Prints |P| for each model and the nonlocal offset from plasma, showing
Drude < nonlocal <= plasma in magnitude at every separation.

    python scripts/model_ordering.py [--material au-8.9] [--T 300]
"""

from __future__ import annotations

import argparse

import numpy as np

from nonlocal_casimir.harness.builtins import builtin_material
from nonlocal_casimir.lifshitz import MatsubaraContext, PlatePair, pressure
from nonlocal_casimir.reflection import Model


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--material", default="au-8.9")
    p.add_argument("--T", type=float, default=300.0)
    args = p.parse_args(argv)

    m = builtin_material(args.material)
    print(f"{'a (nm)':>8} {'|P_D| (mPa)':>12} {'|P_NL| (mPa)':>13} {'|P_P| (mPa)':>12} {'NL/P-1 (%)':>11}")
    for a in np.geomspace(150e-9, 1e-6, 8):
        ctx = MatsubaraContext(args.T, a)
        d, n, pl = (abs(pressure(PlatePair.identical(m, model), ctx)) * 1e3
                    for model in (Model.DRUDE, Model.NONLOCAL, Model.PLASMA))
        print(f"{a * 1e9:8.1f} {d:12.5f} {n:13.5f} {pl:12.5f} {100 * (n / pl - 1):11.3f}")


if __name__ == "__main__":
    main()
