"""Theory bands, comparison with measured data, export and sensitivity sweeps.

All observables are reported as magnitudes (positive numbers): Pa for the
pressure, N for the force and N/m for the force gradient.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..geometry import force_gradient, pfa_force
from ..lifshitz import MatsubaraContext, Plate, PlatePair, free_energy, pressure
from ..materials import MaterialSpec
from ..numerics import ConvergenceError
from ..reflection import Model
from .scenario import MeasuredPoint, Scenario, ScenarioError

log = logging.getLogger(__name__)

COLUMNS = ("a_m", "model", "central", "low", "high", "measured", "err_minus", "err_plus", "pass")


@dataclass(frozen=True)
class ComparisonRow:
    a: float
    model: str
    central: float
    low: float
    high: float
    measured: float | None = None
    err_minus: float | None = None
    err_plus: float | None = None
    passed: bool | None = None

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError("theory_low must not exceed theory_high")

    def as_record(self) -> dict:
        return {"a_m": self.a, "model": self.model, "central": self.central, "low": self.low,
                "high": self.high, "measured": self.measured, "err_minus": self.err_minus,
                "err_plus": self.err_plus, "pass": self.passed}


@dataclass
class ComparisonSummary:
    rows: list[ComparisonRow]
    excluded: dict[str, list[tuple[float, float]]] = field(default_factory=dict)
    passed: dict[str, int] = field(default_factory=dict)
    total: dict[str, int] = field(default_factory=dict)

    def as_text(self) -> str:
        lines = []
        for model in sorted(self.total):
            ranges = ", ".join(f"{lo * 1e9:.1f}-{hi * 1e9:.1f} nm" for lo, hi in self.excluded[model]) or "none"
            lines.append(f"{model}: {self.passed[model]}/{self.total[model]} points consistent; excluded: {ranges}")
        return "\n".join(lines)


# --- evaluation -----------------------------------------------------------

def observable_value(scenario: Scenario, m1: MaterialSpec, m2: MaterialSpec, model: Model,
                     a: float, threads: int | None = None) -> float:
    """Magnitude of the scenario observable for one parameter set."""
    pair = PlatePair(Plate(m1, model), Plate(m2, model))
    ctx = MatsubaraContext(scenario.T, a, threads=threads)
    if scenario.observable == "force":
        sp = scenario.sphere
        return abs(pfa_force(free_energy(pair, ctx), sp.R, sp.correction_at(a)))
    P = pressure(pair, ctx)
    if scenario.observable == "gradient":
        return abs(force_gradient(P, a, scenario.sphere))
    return abs(P)


def _perturbed(m: MaterialSpec, signs: dict, deltas: dict) -> MaterialSpec:
    changes = {}
    for name, sign in signs.items():
        changes[name] = getattr(m, name) * (1.0 + sign * deltas[name])
    return m.with_(**changes) if changes else m


def parameter_corners(scenario: Scenario) -> list[tuple[MaterialSpec, MaterialSpec]]:
    """Material pairs at all ``2**m`` corners of the uncertainty box.

    Identical plates share one parameter set; parameters with zero
    uncertainty are not varied.
    """
    m1, m2 = scenario.materials
    varied = [k for k, v in sorted(scenario.uncertainties.items()) if v > 0]
    distinct = [m1] if m1 == m2 else [m1, m2]
    axes = [(i, name) for i in range(len(distinct)) for name in varied]
    corners = []
    for signs in itertools.product((-1.0, 1.0), repeat=len(axes)):
        per = [dict() for _ in distinct]
        for (i, name), s in zip(axes, signs):
            per[i][name] = s
        mats = [_perturbed(m, per[i], scenario.uncertainties) for i, m in enumerate(distinct)]
        corners.append((mats[0], mats[0]) if len(mats) == 1 else (mats[0], mats[1]))
    return corners


def _workers() -> int:
    env = os.environ.get("CASIMIR_THREADS")
    return max(1, int(env)) if env else (os.cpu_count() or 1)


def run_scenario(scenario: Scenario, threads: int | None = None) -> list[ComparisonRow]:
    """Central values and parameter-uncertainty bands for every model and separation.

    Rows are ordered by ``(model, a)`` in the order the models are listed.
    """
    nthreads = threads if threads is not None else _workers()
    corners = parameter_corners(scenario)
    sets = [scenario.materials] + [c for c in corners if c != scenario.materials]
    jobs = [(model, a, i) for model in scenario.models for a in scenario.separations for i in range(len(sets))]
    inner = 1 if nthreads > 1 else None

    def run(job):
        model, a, i = job
        m1, m2 = sets[i]
        try:
            return observable_value(scenario, m1, m2, model, a, threads=inner)
        except ConvergenceError as exc:
            diag = {**exc.diagnostics, "model": model.value, "a": a}
            raise ConvergenceError(f"{scenario.id}: model {model.value}, a = {a:g} m: {exc}",
                                   estimate=exc.estimate, error=exc.error, diagnostics=diag) from exc

    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as pool:
            values = list(pool.map(run, jobs))
    else:
        values = [run(j) for j in jobs]

    by_key: dict[tuple, list[float]] = {}
    for (model, a, _), v in zip(jobs, values):
        by_key.setdefault((model, a), []).append(v)
    rows = []
    for model in scenario.models:
        for a in scenario.separations:
            vals = by_key[(model, a)]
            rows.append(ComparisonRow(a, model.value, vals[0], min(vals), max(vals)))
    return rows


# --- comparison -----------------------------------------------------------

def _loglog(a: float, xs: np.ndarray, ys: np.ndarray) -> float:
    if np.any(ys <= 0):
        return float(np.interp(a, xs, ys))
    return float(np.exp(np.interp(math.log(a), np.log(xs), np.log(ys))))


def interpolate_band(rows: list[ComparisonRow], model: str, a: float) -> tuple[float, float, float]:
    """``(central, low, high)`` at separation ``a`` by log-log interpolation."""
    sel = sorted((r for r in rows if r.model == model), key=lambda r: r.a)
    if not sel:
        raise ScenarioError(f"no theory rows for model {model!r}")
    xs = np.array([r.a for r in sel])
    tol = 1e-9 * xs[-1]
    if a < xs[0] - tol or a > xs[-1] + tol:
        raise ScenarioError(f"measured separation {a:g} m outside theory grid [{xs[0]:g}, {xs[-1]:g}]")
    a = min(max(a, xs[0]), xs[-1])
    return tuple(_loglog(a, xs, np.array([getattr(r, f) for r in sel])) for f in ("central", "low", "high"))


def band_overlaps(low: float, high: float, point: MeasuredPoint) -> bool:
    """Closed-interval overlap of the theory band and the error bar."""
    return max(low, point.low) <= min(high, point.high)


def _ranges(points: list[MeasuredPoint], flags: list[bool]) -> list[tuple[float, float]]:
    out, start, last = [], None, None
    for p, ok in zip(points, flags):
        if not ok:
            start = p.a if start is None else start
            last = p.a
        elif start is not None:
            out.append((start, last))
            start = None
    if start is not None:
        out.append((start, last))
    return out


def compare(rows: list[ComparisonRow], points: list[MeasuredPoint]) -> ComparisonSummary:
    """Check each measured point against every model's theory band."""
    if not points:
        raise ScenarioError("compare: no measured points")
    if not rows:
        raise ScenarioError("compare: no theory rows")
    points = sorted(points, key=lambda p: p.a)
    models = list(dict.fromkeys(r.model for r in rows))
    summary = ComparisonSummary([])
    for model in models:
        flags = []
        for p in points:
            central, low, high = interpolate_band(rows, model, p.a)
            ok = band_overlaps(low, high, p)
            flags.append(ok)
            summary.rows.append(ComparisonRow(p.a, model, central, low, high, p.value, p.err_minus, p.err_plus, ok))
        summary.excluded[model] = _ranges(points, flags)
        summary.passed[model] = sum(flags)
        summary.total[model] = len(flags)
    return summary


# --- export ---------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    return f"{x:.9g}"


def _round(x):
    if isinstance(x, float):
        return float(f"{x:.9g}")
    return x


def export(rows: list[ComparisonRow], fmt: str, path) -> Path:
    """Write rows as CSV or JSON with a fixed column order and 9 significant digits."""
    path = Path(path)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            rec = r.as_record()
            writer.writerow([_fmt(rec[c]) for c in COLUMNS])
        path.write_text(buf.getvalue())
    elif fmt == "json":
        records = [{c: _round(r.as_record()[c]) for c in COLUMNS} for r in rows]
        path.write_text(json.dumps(records, indent=1) + "\n")
    else:
        raise ValueError(f"unknown export format {fmt!r}")
    return path


def read_export(path) -> list[ComparisonRow]:
    """Read back a file written by :func:`export`."""
    path = Path(path)

    def num(s):
        return None if s in ("", None) else float(s)

    def flag(s):
        return None if s in ("", None) else (s if isinstance(s, bool) else s == "true")

    if path.suffix == ".json":
        records = json.loads(path.read_text())
    else:
        with open(path, newline="") as fh:
            records = list(csv.DictReader(fh))
    return [ComparisonRow(num(r["a_m"]), r["model"], num(r["central"]), num(r["low"]), num(r["high"]),
                          num(r["measured"]), num(r["err_minus"]), num(r["err_plus"]), flag(r["pass"]))
            for r in records]


# --- sensitivity ----------------------------------------------------------

@dataclass
class SensitivityReport:
    param: str
    a: float
    factors: list[float]
    pressures: list[float]
    baseline: float

    @property
    def max_rel_change(self) -> float:
        """Spread of the swept pressures relative to the baseline."""
        return (max(self.pressures) - min(self.pressures)) / abs(self.baseline)

    def as_text(self) -> str:
        lines = [f"sensitivity {self.param} at a = {self.a:g} m, baseline P = {self.baseline:.9g} Pa"]
        for f, p in zip(self.factors, self.pressures):
            lines.append(f"  {self.param}/v_F = {f:6.3f}  P = {p:.9g} Pa  dP/P = {(p - self.baseline) / abs(self.baseline):+.4%}")
        lines.append(f"  max relative change {self.max_rel_change:.4%}")
        return "\n".join(lines)


SWEEP_RANGES = {"vL": (0.0, 10.0), "vTr": (0.5, 3.0)}


def sensitivity_sweep(material: MaterialSpec, param: str, a: float = 500e-9, T: float = 300.0,
                      factors=None, baseline_factor: float = 1.5) -> SensitivityReport:
    """Nonlocal plate-plate pressure as one velocity constant is swept.

    The other velocity constant stays at ``baseline_factor * v_F``.
    """
    if param not in SWEEP_RANGES:
        raise ValueError(f"param must be one of {sorted(SWEEP_RANGES)}")
    if factors is None:
        lo, hi = SWEEP_RANGES[param]
        factors = list(np.linspace(lo, hi, 11))
    vf = float(material.v_fermi)
    base = material.with_(v_tr=baseline_factor * vf, v_l=baseline_factor * vf)
    ctx = MatsubaraContext(T, a)
    key = "v_l" if param == "vL" else "v_tr"

    def P(m):
        return pressure(PlatePair.identical(m, Model.NONLOCAL), ctx)

    values = [P(base.with_(**{key: f * vf})) for f in factors]
    return SensitivityReport(param, a, [float(f) for f in factors], values, P(base))
