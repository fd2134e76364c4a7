"""Command-line entry point ``casimir``.

Exit codes: 0 on success, 2 when a numerical procedure fails to converge,
3 when an input fails validation.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from ..geometry import ideal_metal_pressure
from ..impedance import ModelError
from ..kramers_kronig import kk_residual, reconstruction_report
from ..materials import load_material
from ..numerics import ConvergenceError
from ..reflection import Model
from .runner import compare, export, run_scenario, sensitivity_sweep
from .scenario import ScenarioError, load_measured, load_scenario

EXIT_CONVERGENCE = 2
EXIT_VALIDATION = 3


def _print_rows(rows, unit):
    print(f"{'a [m]':>12} {'model':>9} {'central':>14} {'low':>14} {'high':>14}  [{unit}]")
    for r in rows:
        print(f"{r.a:12.6g} {r.model:>9} {r.central:14.7g} {r.low:14.7g} {r.high:14.7g}")


def _cmd_observable(args) -> int:
    scenario = load_scenario(args.scenario)
    changes = {"observable": args.command}
    if args.models:
        try:
            changes["models"] = tuple(Model.parse(m) for m in args.models.split(","))
        except ValueError as exc:
            raise ScenarioError(f"--models: {exc}") from exc
    scenario = scenario.with_(**changes)
    rows = run_scenario(scenario)
    data_file = args.data or scenario.data_file
    if data_file:
        summary = compare(rows, load_measured(data_file))
        rows = summary.rows
        print(summary.as_text())
    unit = {"pressure": "Pa", "force": "N", "gradient": "N/m"}[args.command]
    _print_rows(rows, unit)
    if args.out:
        fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
        export(rows, fmt, args.out)
    return 0


def _cmd_kk(args) -> int:
    m = load_material(args.material)
    grid = np.geomspace(args.min, args.max, args.points)
    print(reconstruction_report(m, args.k, args.branch, grid).as_text())
    print(kk_residual(m, args.k, args.branch, grid).as_text())
    return 0


def _cmd_sensitivity(args) -> int:
    m = load_material(args.material)
    print(sensitivity_sweep(m, args.param, a=args.a, T=args.T).as_text())
    return 0


def _cmd_ideal(args) -> int:
    print(f"{ideal_metal_pressure(args.a):.9g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="casimir", description="Casimir interaction with nonlocal metals")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("pressure", "force", "gradient"):
        p = sub.add_parser(name, help=f"theory bands of the {name} for a scenario")
        p.add_argument("--scenario", required=True, help="scenario file or built-in name")
        p.add_argument("--models", help="comma-separated subset of drude,plasma,nonlocal")
        p.add_argument("--data", help="measured data CSV (overrides the scenario's data_file)")
        p.add_argument("--out", help="export path")
        p.add_argument("--format", choices=("csv", "json"))
        p.set_defaults(func=_cmd_observable)

    kk = sub.add_parser("kk", help="Kramers-Kronig checks")
    kk_sub = kk.add_subparsers(dest="kk_command", required=True)
    check = kk_sub.add_parser("check", help="dispersion-relation residuals for one branch")
    check.add_argument("--material", required=True, help="material file or built-in name")
    check.add_argument("--branch", choices=("T", "L"), required=True)
    check.add_argument("--k", type=float, default=0.0, help="wavenumber in 1/m")
    check.add_argument("--min", type=float, default=0.05, help="lowest hbar*omega, hbar*xi (eV)")
    check.add_argument("--max", type=float, default=5.0, help="highest hbar*omega, hbar*xi (eV)")
    check.add_argument("--points", type=int, default=12)
    check.set_defaults(func=_cmd_kk)

    sens = sub.add_parser("sensitivity", help="sweep a nonlocal velocity constant")
    sens.add_argument("--param", choices=("vL", "vTr"), required=True)
    sens.add_argument("--material", default="au-9.0")
    sens.add_argument("--a", type=float, default=500e-9, help="separation (m)")
    sens.add_argument("--T", type=float, default=300.0, help="temperature (K)")
    sens.set_defaults(func=_cmd_sensitivity)

    ideal = sub.add_parser("ideal", help="ideal-metal pressure at zero temperature")
    ideal.add_argument("--a", type=float, required=True, help="separation (m)")
    ideal.set_defaults(func=_cmd_ideal)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ScenarioError, ModelError, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
