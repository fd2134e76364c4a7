"""Generate the SYNTHETIC measured-data fixture shipped with the harness.

The points are NOT experimental data. They are the plasma-model central
values of the built-in trench-force scenario, scattered deterministically by
a fraction of a percent and given 1% error arms, so that the comparison
machinery has a fixture on which a Drude band is excluded everywhere.

    python scripts/make_synthetic_fixture.py
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from nonlocal_casimir.harness import load_scenario, run_scenario
from nonlocal_casimir.reflection import Model

OUT = Path(__file__).resolve().parents[1] / "src" / "nonlocal_casimir" / "harness" / "data"


def main():
    rng = np.random.default_rng(20240611)
    scenario = load_scenario("trench-force").with_(models=(Model.PLASMA,))
    rows = run_scenario(scenario, threads=1)
    path = OUT / "synthetic_trench_force.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a_m", "value", "err_minus", "err_plus", "confidence"])
        for r in rows:
            v = r.central
            value = v * (1.0 + 0.002 * rng.standard_normal())
            w.writerow([f"{r.a:.9g}", f"{value:.9g}", f"{0.01 * v:.9g}", f"{0.012 * v:.9g}", 95])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
