"""Scenario files and measured data.

A scenario is a JSON object::

    {
      "id": "my-run",
      "geometry": "sphere-plate",          # or "plates"
      "R_m": 1.5e-4,                       # sphere radius, sphere-plate only
      "materials": ["au-9.0", "ni"],       # built-in names, file paths or inline records
      "models": ["drude", "plasma", "nonlocal"],
      "T_K": 300,
      "observable": "gradient",            # pressure | force | gradient
      "separations_m": [2.2e-7, 3e-7],
      "theta": -0.5,                       # number or {"table_file": ...}
      "correction": {"table_file": "c.csv"},
      "uncertainties": {"hbar_omega_p": 0.005, "hbar_gamma": 0.05},
      "data_file": "measured.csv"
    }

Relative paths are resolved against the directory of the scenario file.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..geometry import SeparationTable, SpherePlateConfig
from ..materials import MaterialSpec, load_material, material_from_dict
from ..reflection import Model
from .builtins import DEFAULT_UNCERTAINTIES, builtin_scenario_dict

OBSERVABLES = ("pressure", "force", "gradient")
GEOMETRIES = ("plates", "sphere-plate")
UNCERTAIN_PARAMETERS = ("hbar_omega_p", "hbar_gamma")
KNOWN_FIELDS = {"id", "geometry", "R_m", "materials", "models", "T_K", "observable", "separations_m",
                "theta", "correction", "uncertainties", "data_file", "note", "description"}


class ScenarioError(ValueError):
    """Invalid scenario or data file; the message names the offending field."""


@dataclass(frozen=True)
class MeasuredPoint:
    a: float
    value: float
    err_minus: float
    err_plus: float
    confidence: int = 95

    def __post_init__(self):
        if self.err_minus < 0 or self.err_plus < 0:
            raise ScenarioError("measured point: error arms must be nonnegative")
        if self.confidence not in (67, 95):
            raise ScenarioError("measured point: confidence must be 67 or 95")
        if not self.a > 0:
            raise ScenarioError("measured point: separation must be positive")

    @property
    def low(self) -> float:
        return self.value - self.err_minus

    @property
    def high(self) -> float:
        return self.value + self.err_plus


@dataclass(frozen=True)
class Scenario:
    id: str
    geometry: str
    materials: tuple[MaterialSpec, MaterialSpec]
    separations: tuple[float, ...]
    observable: str = "pressure"
    models: tuple[Model, ...] = (Model.DRUDE, Model.PLASMA, Model.NONLOCAL)
    T: float = 300.0
    sphere: SpherePlateConfig | None = None
    uncertainties: dict = field(default_factory=lambda: dict(DEFAULT_UNCERTAINTIES))
    data_file: Path | None = None

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ScenarioError(f"geometry: expected one of {GEOMETRIES}, got {self.geometry!r}")
        if self.observable not in OBSERVABLES:
            raise ScenarioError(f"observable: expected one of {OBSERVABLES}, got {self.observable!r}")
        if self.geometry == "sphere-plate" and self.sphere is None:
            raise ScenarioError("R_m: sphere-plate geometry needs a sphere radius")
        if self.observable in ("force", "gradient") and self.sphere is None:
            raise ScenarioError(f"observable: {self.observable} needs sphere-plate geometry")
        if not self.separations:
            raise ScenarioError("separations_m: at least one separation required")
        for i, (a1, a2) in enumerate(zip(self.separations, self.separations[1:])):
            if a2 == a1:
                raise ScenarioError(f"separations_m[{i + 1}]: duplicate separation {a2:g}")
            if a2 < a1:
                raise ScenarioError(f"separations_m[{i + 1}]: separations must be ascending")
        if any(not a > 0 for a in self.separations):
            raise ScenarioError("separations_m: separations must be positive")
        if not self.T > 0:
            raise ScenarioError("T_K: temperature must be positive")
        for key, val in self.uncertainties.items():
            if key not in UNCERTAIN_PARAMETERS:
                raise ScenarioError(f"uncertainties.{key}: unknown parameter")
            if not (val >= 0 and math.isfinite(val)):
                raise ScenarioError(f"uncertainties.{key}: must be a finite value >= 0")
        if not self.models:
            raise ScenarioError("models: at least one model required")

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


def _resolve(path, base: Path) -> Path:
    p = Path(path)
    return p if p.is_absolute() else base / p


def _material(entry, base: Path, where: str) -> MaterialSpec:
    try:
        if isinstance(entry, dict):
            return material_from_dict(entry, base)
        if isinstance(entry, str):
            path = _resolve(entry, base)
            return load_material(path if path.exists() else entry)
    except (ValueError, OSError) as exc:
        raise ScenarioError(f"{where}: {exc}") from exc
    raise ScenarioError(f"{where}: expected a name, path or material record")


def _table_or_number(raw, base: Path, where: str):
    if raw is None:
        return None
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return float(raw)
    if isinstance(raw, dict) and "table_file" in raw:
        try:
            return SeparationTable.from_csv(_resolve(raw["table_file"], base))
        except (ValueError, OSError) as exc:
            raise ScenarioError(f"{where}.table_file: {exc}") from exc
    raise ScenarioError(f"{where}: expected a number or {{'table_file': ...}}")


def scenario_from_dict(data: dict, base_dir: Path | str = ".") -> Scenario:
    base = Path(base_dir)
    if not isinstance(data, dict):
        raise ScenarioError("scenario: top level must be an object")
    for key in ("id", "materials", "separations_m"):
        if key not in data:
            raise ScenarioError(f"{key}: required field missing")
    unknown = sorted(set(data) - KNOWN_FIELDS)
    if unknown:
        raise ScenarioError(f"{unknown[0]}: unknown field")
    geometry = data.get("geometry", "sphere-plate" if "R_m" in data else "plates")

    mats = data["materials"]
    if isinstance(mats, (str, dict)):
        mats = [mats, mats]
    if not isinstance(mats, list) or len(mats) != 2:
        raise ScenarioError("materials: expected a list of two entries")
    materials = tuple(_material(m, base, f"materials[{i}]") for i, m in enumerate(mats))

    try:
        models = tuple(Model.parse(m) for m in data.get("models", [m.value for m in Model]))
    except ValueError as exc:
        raise ScenarioError(f"models: {exc}") from exc

    seps = data["separations_m"]
    if not isinstance(seps, list):
        raise ScenarioError("separations_m: expected a list")
    try:
        separations = tuple(float(a) for a in seps)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"separations_m: {exc}") from exc

    sphere = None
    if geometry == "sphere-plate":
        if "R_m" not in data:
            raise ScenarioError("R_m: sphere-plate geometry needs a sphere radius")
        try:
            sphere = SpherePlateConfig(
                float(data["R_m"]),
                theta=_table_or_number(data.get("theta"), base, "theta"),
                correction=_table_or_number(data.get("correction"), base, "correction"),
            )
        except ScenarioError:
            raise
        except ValueError as exc:
            raise ScenarioError(f"R_m/theta: {exc}") from exc

    unc = dict(DEFAULT_UNCERTAINTIES)
    raw_unc = data.get("uncertainties", {})
    if not isinstance(raw_unc, dict):
        raise ScenarioError("uncertainties: expected an object")
    for key, val in raw_unc.items():
        try:
            unc[key] = float(val)
        except (TypeError, ValueError):
            raise ScenarioError(f"uncertainties.{key}: not a number") from None

    data_file = _resolve(data["data_file"], base) if data.get("data_file") else None
    return Scenario(
        id=str(data["id"]),
        geometry=geometry,
        materials=materials,
        separations=separations,
        observable=data.get("observable", "pressure"),
        models=models,
        T=float(data.get("T_K", 300.0)),
        sphere=sphere,
        uncertainties=unc,
        data_file=data_file,
    )


def load_scenario(path) -> Scenario:
    """Read and validate a scenario file, or a built-in scenario by name."""
    p = Path(path)
    if p.exists():
        try:
            with open(p) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{p}: invalid JSON ({exc})") from exc
        return scenario_from_dict(data, p.parent)
    try:
        data = builtin_scenario_dict(str(path))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    return scenario_from_dict(data)


def load_measured(path, confidence: int | None = None) -> list[MeasuredPoint]:
    """Read ``a_m, value, err_minus, err_plus[, confidence]`` rows (header required)."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        need = {"a_m", "value", "err_minus", "err_plus"}
        if reader.fieldnames is None or not need <= set(reader.fieldnames):
            raise ScenarioError(f"{path}: columns {sorted(need)} required")
        points = []
        for n, row in enumerate(reader, start=2):
            try:
                conf = int(row.get("confidence") or confidence or 95)
                points.append(MeasuredPoint(float(row["a_m"]), float(row["value"]),
                                            float(row["err_minus"]), float(row["err_plus"]), conf))
            except (TypeError, ValueError) as exc:
                raise ScenarioError(f"{path}:{n}: {exc}") from exc
    if not points:
        raise ScenarioError(f"{path}: no data rows")
    return points
