"""Sensitivity of the nonlocal pressure to the longitudinal and transverse velocities.

    python scripts/velocity_sensitivity.py [--material au-9.0] [--a 5e-7]
"""

from __future__ import annotations

import argparse

from nonlocal_casimir.harness import sensitivity_sweep
from nonlocal_casimir.harness.builtins import builtin_material


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--material", default="au-9.0")
    p.add_argument("--a", type=float, default=500e-9, help="separation in m")
    p.add_argument("--T", type=float, default=300.0)
    args = p.parse_args(argv)

    m = builtin_material(args.material)
    for param in ("vL", "vTr"):
        print(sensitivity_sweep(m, param, a=args.a, T=args.T).as_text())
        print()


if __name__ == "__main__":
    main()
