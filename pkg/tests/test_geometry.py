import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonlocal_casimir.geometry import (
    SeparationTable,
    SpherePlateConfig,
    TableRangeError,
    effective_pressure,
    force_gradient,
    ideal_metal_free_energy,
    ideal_metal_pressure,
    pfa_force,
)


def test_ideal_metal_pressure_at_one_micron():
    assert ideal_metal_pressure(1e-6) == pytest.approx(-1.3001e-3, rel=1e-4)


def test_ideal_metal_free_energy_derivative():
    a, h = 1e-6, 1e-10
    deriv = (ideal_metal_free_energy(a + h) - ideal_metal_free_energy(a - h)) / (2 * h)
    assert -deriv == pytest.approx(ideal_metal_pressure(a), rel=1e-7)


def test_pfa_force():
    assert pfa_force(-2.0, 1.0 / math.pi) == pytest.approx(-4.0)
    assert pfa_force(-2.0, 1.0 / math.pi, correction=0.9) == pytest.approx(-3.6)
    with pytest.raises(ValueError):
        pfa_force(-1.0, 0.0)


@given(P=st.floats(-1.0, -1e-9), R=st.floats(1e-6, 1e-3))
def test_effective_pressure_inverts_gradient(P, R):
    cfg = SpherePlateConfig(R)
    assert effective_pressure(force_gradient(P, 1e-7, cfg), R) == pytest.approx(P, rel=1e-14)


def test_gradient_correction_factor():
    cfg = SpherePlateConfig(R=40e-6, theta=-0.5)
    g0 = force_gradient(-1.0, 400e-9, SpherePlateConfig(R=40e-6))
    assert force_gradient(-1.0, 400e-9, cfg) == pytest.approx(g0 * (1 - 0.5 * 0.01))


def test_theta_range_validated():
    with pytest.raises(ValueError):
        SpherePlateConfig(R=1e-4, theta=0.3)
    with pytest.raises(ValueError):
        SpherePlateConfig(R=0.0)


def test_pfa_warning_threshold():
    cfg = SpherePlateConfig(R=10e-6)
    assert not cfg.pfa_warning(0.5e-6)
    assert cfg.pfa_warning(1.5e-6)


def test_separation_table(tmp_path):
    path = tmp_path / "theta.csv"
    path.write_text("a_m,theta\n1e-7,-0.2\n3e-7,-0.6\n")
    t = SeparationTable.from_csv(path)
    assert t(2e-7) == pytest.approx(-0.4)
    cfg = SpherePlateConfig(R=40e-6, theta=t)
    assert cfg.theta_at(1e-7) == pytest.approx(-0.2)
    with pytest.raises(TableRangeError):
        t(5e-7)
    with pytest.raises(ValueError):
        SeparationTable((2e-7, 1e-7), (0.0, 0.0))
