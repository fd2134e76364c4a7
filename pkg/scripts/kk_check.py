"""Kramers-Kronig consistency of the nonlocal permittivity on both axes.

Prints the real-axis Re-from-Im residual and the imaginary-axis
reconstruction residual for each branch at a few wave numbers, plus the
residual obtained when the transverse pole term is left out.

    python scripts/kk_check.py [--material au-9.0]
"""

from __future__ import annotations

import argparse

import numpy as np

from nonlocal_casimir.constants import C_M_S, HBAR_C_EV_M
from nonlocal_casimir.harness.builtins import builtin_material
from nonlocal_casimir.kramers_kronig import kk_residual, reconstruction_report


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--material", default="au-9.0")
    args = p.parse_args(argv)

    m = builtin_material(args.material)
    omega = np.geomspace(0.05, 20.0, 12)
    xi = np.geomspace(0.05, 5.0, 12)
    for branch in ("T", "L"):
        v = m.v_tr if branch == "T" else m.v_l
        k_gamma = m.hbar_gamma / (v / C_M_S * HBAR_C_EV_M)
        for k in (0.0, 0.5 * k_gamma, 2.0 * k_gamma):
            real = kk_residual(m, k, branch, omega).max_residual
            imag = reconstruction_report(m, k, branch, xi).max_residual
            print(f"branch {branch}  k = {k:9.3e} 1/m  real axis {real:.2e}  imaginary axis {imag:.2e}")
    k = 0.5 * m.hbar_gamma / (m.v_tr / C_M_S * HBAR_C_EV_M)
    bad = reconstruction_report(m, k, "T", xi, include_pole_term=False).max_residual
    print(f"transverse pole term omitted: residual {bad:.3f}")


if __name__ == "__main__":
    main()
