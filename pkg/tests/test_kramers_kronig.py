import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonlocal_casimir.constants import C_M_S, HBAR_C_EV_M
from nonlocal_casimir.impedance import ModelError
from nonlocal_casimir.kramers_kronig import (
    KKReport,
    im_eps_real_axis,
    kk_residual,
    reconstruct_imag_axis,
    reconstruction_report,
    static_transverse_conductivity,
)
from nonlocal_casimir.materials import (
    CoreTable,
    MaterialSpec,
    OscillatorSet,
    drude_permittivity_imag,
    nonlocal_permittivity_L,
    nonlocal_permittivity_T,
    nonlocal_permittivity_real,
)


def k_for(v, energy_ev):
    return energy_ev / (v / C_M_S * HBAR_C_EV_M)


def test_local_imaginary_part_is_drude(au):
    w = np.geomspace(0.01, 10, 7)
    g, wp = au.hbar_gamma, au.hbar_omega_p
    expected = wp**2 * g / (w * (w * w + g * g))
    np.testing.assert_allclose(im_eps_real_axis(au, w, 0.0, "T"), expected, rtol=1e-14)
    np.testing.assert_allclose(im_eps_real_axis(au, w, 0.0, "L"), expected, rtol=1e-14)


def test_lossless_plasma_has_no_absorption():
    m = MaterialSpec("p", 9.0, 0.0)
    assert im_eps_real_axis(m, 1.0, 0.0, "T") == 0.0


def test_transparent_point_of_transverse_branch():
    # wp = gamma = 1 eV, v k = omega = 1 eV: eps_T = 1 - (1 + i)/(1 + i) = 0
    m = MaterialSpec("x", 1.0, 1.0, v_tr=1e6, v_l=1e6)
    assert im_eps_real_axis(m, 1.0, k_for(1e6, 1.0), "T") == pytest.approx(0.0, abs=1e-15)


@given(w=st.floats(1e-3, 30.0), kfac=st.floats(0.0, 5.0), branch=st.sampled_from("TL"))
def test_imaginary_part_matches_complex_evaluation(w, kfac, branch):
    core = OscillatorSet.from_triples([(40.0, 4.0, 1.8), (150.0, 8.5, 7.0)])
    m = MaterialSpec("au", 9.0, 0.035, 2.67e6, 2.67e6, core=core)
    k = kfac * k_for(2.67e6, m.hbar_gamma)
    direct = np.imag(nonlocal_permittivity_real(m, w, k, branch))
    assert im_eps_real_axis(m, w, k, branch) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_static_conductivity_examples(au):
    g, wp2 = au.hbar_gamma, au.hbar_omega_p**2
    k0 = k_for(au.v_tr, g)
    assert static_transverse_conductivity(au, 0.0) == pytest.approx(wp2 / (4 * math.pi * g), rel=1e-14)
    assert static_transverse_conductivity(au, k0) == pytest.approx(0.0, abs=1e-9)
    assert static_transverse_conductivity(au, 2 * k0) == pytest.approx(-wp2 / (4 * math.pi * g), rel=1e-12)
    with pytest.raises(ModelError):
        static_transverse_conductivity(au.with_(hbar_gamma=0.0), 0.0)


def test_longitudinal_local_reconstruction(au):
    for xi in (0.05, 0.5, 5.0):
        assert reconstruct_imag_axis(au, xi, 0.0, "L") == pytest.approx(float(drude_permittivity_imag(au, xi)), rel=1e-4)


def test_longitudinal_screening_limit(au):
    assert reconstruct_imag_axis(au, 0.2, 1e18, "L") == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("branch", ["T", "L"])
def test_reconstruction_with_oscillator_core(branch):
    # an undamped oscillator contributes through its delta-function absorption
    core = OscillatorSet.from_triples([(7.0, 3.05, 0.75), (2.7, 5.4, 0.0), (150.0, 8.5, 7.0)])
    m = MaterialSpec("au", 9.0, 0.035, 2.67e6, 2.67e6, core=core)
    k = k_for(2.67e6, 0.02)
    direct = nonlocal_permittivity_T if branch == "T" else nonlocal_permittivity_L
    for xi in (0.05, 1.0, 5.0):
        assert reconstruct_imag_axis(m, xi, k, branch) == pytest.approx(float(direct(m, xi, k)), rel=1e-8)


def test_missing_pole_term_is_detected(au):
    k = k_for(au.v_tr, au.hbar_gamma / 2)
    full = reconstruction_report(au, k, "T", [0.05, 0.5, 5.0])
    bad = reconstruction_report(au, k, "T", [0.05, 0.5, 5.0], include_pole_term=False)
    assert full.max_residual < 1e-8
    assert bad.residuals[0] > 1e-2
    # the omitted weight decays as xi^-2 relative to a xi^-2 (1 + ...) permittivity
    assert bad.residuals[0] > bad.residuals[-1]


@pytest.mark.parametrize("branch", ["T", "L"])
def test_real_part_from_absorption(au, branch):
    report = kk_residual(au, 0.0, branch, np.geomspace(0.1, 10, 20))
    assert report.max_residual < 1e-3
    assert report.kind == "real-axis"
    assert len(report.curve) == 20


def test_real_part_from_absorption_nonlocal(ni):
    k = k_for(ni.v_tr, 2 * ni.hbar_gamma)
    assert kk_residual(ni, k, "T", np.geomspace(0.1, 10, 10)).max_residual < 1e-6


def test_lossless_case_rejected():
    m = MaterialSpec("p", 9.0, 0.0, 2e6, 2e6)
    with pytest.raises(ModelError):
        kk_residual(m, 0.0, "T", [1.0])
    with pytest.raises(ModelError):
        reconstruct_imag_axis(m, 1.0, 0.0, "T")


def test_tabulated_core_rejected(au):
    m = au.with_(core=CoreTable((0.1, 1.0), (3.0, 2.0)))
    with pytest.raises(ModelError):
        reconstruct_imag_axis(m, 1.0, 0.0, "L")


def test_report_validation():
    with pytest.raises(ValueError):
        KKReport("T", 0.0, np.array([2.0, 1.0]), 0.0, np.zeros(2))
    with pytest.raises(ValueError):
        KKReport("T", 0.0, np.array([1.0, 2.0]), 0.0, np.array([0.0, np.nan]))


def test_grid_validation(au):
    with pytest.raises(ValueError):
        kk_residual(au, 0.0, "T", [1.0, 0.5])
    with pytest.raises(ValueError):
        reconstruction_report(au, 0.0, "Z", [1.0])


def test_report_text(au):
    text = reconstruction_report(au, 0.0, "L", [0.1, 1.0]).as_text()
    assert text.startswith("kk imag-axis branch=L")
    assert len(text.splitlines()) == 4
