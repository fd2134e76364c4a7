"""Experiment scenarios, theory bands and the ``casimir`` command line."""

from .builtins import BUILTIN_MATERIALS, BUILTIN_SCENARIOS, builtin_material
from .runner import (
    ComparisonRow,
    ComparisonSummary,
    SensitivityReport,
    compare,
    export,
    read_export,
    run_scenario,
    sensitivity_sweep,
)
from .scenario import MeasuredPoint, Scenario, ScenarioError, load_measured, load_scenario
