"""Nonlocal versus plasma sphere-plate force for the built-in trench-force scenario.

Prints both force magnitudes (fN) and the relative difference
(F_plasma - F_nonlocal) / F_plasma in percent at each separation.

    python scripts/trench_force_ratios.py [--v-over-vf 1.5]
"""

from __future__ import annotations

import argparse
import time

from nonlocal_casimir.harness import load_scenario
from nonlocal_casimir.harness.builtins import builtin_material
from nonlocal_casimir.harness.runner import observable_value
from nonlocal_casimir.reflection import Model


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--v-over-vf", type=float, default=1.5, help="v_Tr = v_L in units of v_F")
    args = p.parse_args(argv)

    s = load_scenario("trench-force")
    m = builtin_material(s.materials[0].name, v_over_vf=args.v_over_vf)
    start = time.perf_counter()
    print(f"{'a (um)':>8} {'F_nl (fN)':>12} {'F_pl (fN)':>12} {'diff (%)':>9}")
    for a in s.separations:
        nl, pl = (observable_value(s, m, m, model, a) * 1e15 for model in (Model.NONLOCAL, Model.PLASMA))
        print(f"{a * 1e6:8.2f} {nl:12.4f} {pl:12.4f} {100 * (pl - nl) / pl:9.3f}")
    print(f"elapsed {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
