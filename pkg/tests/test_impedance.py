import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from nonlocal_casimir.constants import HBAR_C_EV_M
from nonlocal_casimir.impedance import (
    ModelError,
    _branch_factor,
    b_longitudinal,
    b_transverse,
    impedance_coefficients,
    rho_branch_factor,
    z0_te,
    z0_tm,
    z_local,
    z_nonlocal_te,
    z_nonlocal_tm,
)
from nonlocal_casimir.materials import (
    MaterialSpec,
    OscillatorSet,
    drude_permittivity_imag,
    nonlocal_permittivity_L,
    nonlocal_permittivity_T,
)

XI1 = 0.16243  # roughly the first Matsubara energy at room temperature


def trapezoid_oracle(m, xi, p, mu=1.0):
    """Impedances from the permittivities themselves on a dense log grid."""
    w = np.linspace(-40.0, 40.0, 400001)
    x = np.exp(w)
    k = xi / HBAR_C_EV_M * np.sqrt(p * p + x * x)
    eps_l = nonlocal_permittivity_L(m, xi, k)
    eps_t = nonlocal_permittivity_T(m, xi, k)
    tm = (p * p / eps_l + mu * x * x / (mu * eps_t + p * p + x * x)) / (p * p + x * x)
    te = mu / (mu * eps_t + p * p + x * x)
    return 2 / math.pi * np.trapezoid(tm * x, w), 2 / math.pi * np.trapezoid(te * x, w)


@pytest.mark.parametrize("p", [0.0, 0.3, 1.0, 10.0, 300.0])
def test_impedances_match_trapezoid_oracle(au, p):
    ztm, zte = trapezoid_oracle(au, XI1, p)
    assert z_nonlocal_tm(au, XI1, p) == pytest.approx(ztm, rel=1e-9)
    assert z_nonlocal_te(au, XI1, p) == pytest.approx(zte, rel=1e-9)


def test_impedances_with_oscillator_core_match_oracle():
    core = OscillatorSet.from_triples([(7.0, 3.0, 0.7), (150.0, 8.5, 7.0)])
    m = MaterialSpec("c", 9.0, 0.035, 2.6e6, 2.6e6, core=core)
    ztm, zte = trapezoid_oracle(m, 0.5, 2.0)
    assert z_nonlocal_tm(m, 0.5, 2.0) == pytest.approx(ztm, rel=1e-9)
    assert z_nonlocal_te(m, 0.5, 2.0) == pytest.approx(zte, rel=1e-9)


def test_local_limit_matches_surface_impedance(au):
    local = au.with_(v_tr=0.0, v_l=0.0)
    p = np.array([0.0, 0.5, 3.0, 80.0])
    eps = drude_permittivity_imag(local, XI1)
    ztm, zte = z_local(eps, 1.0, p)
    np.testing.assert_allclose(z_nonlocal_tm(local, XI1, p), ztm, rtol=1e-9)
    np.testing.assert_allclose(z_nonlocal_te(local, XI1, p), zte, rtol=1e-9)


def test_batch_matches_scalar(au):
    p = np.array([0.1, 2.0, 40.0])
    batch = z_nonlocal_te(au, XI1, p)
    assert batch.shape == (3,)
    for pi, zi in zip(p, batch):
        assert z_nonlocal_te(au, XI1, float(pi)) == pytest.approx(zi, rel=1e-9)


def test_negative_p_rejected(au):
    with pytest.raises(ValueError):
        z_nonlocal_te(au, XI1, -1.0)


def test_coefficients_need_positive_frequency(au):
    with pytest.raises(ModelError):
        impedance_coefficients(au, 0.0)


@given(rho=st.floats(1e-8, 1e8))
def test_branch_factor_against_quadrature(rho):
    # beyond t_max the integrand is below 1e-16 of its peak
    t_max = 40.0 + abs(math.log(rho))
    knee = max(0.0, math.log(2.0 / rho)) if rho < 1 else 0.0
    ref, _ = quad(lambda t: 1.0 / (1.0 + rho * math.cosh(t)), 0.0, t_max, points=[knee] if knee else None,
                  epsabs=0, epsrel=1e-12, limit=400)
    assert float(_branch_factor(rho)) == pytest.approx(ref, rel=1e-9)


def test_branch_factor_continuous_at_unity():
    rho = 1.0 + np.array([-2e-6, -1e-6, -5e-7, 0.0, 5e-7, 1e-6, 2e-6])
    vals = _branch_factor(rho)
    assert vals[3] == 1.0
    assert np.all(np.abs(np.diff(vals)) < 1e-6)
    np.testing.assert_allclose(vals, 1.0 - 2.0 / 3.0 * (rho - 1.0), atol=1e-11)


def test_rho_branch_factor_limit_at_zero():
    assert float(rho_branch_factor(0.0)) == 0.0


def test_zero_frequency_scales(au):
    b = b_longitudinal(au)
    B = b_transverse(au, 1.0)
    # xi_0 Z_TM / c at k = b: (2 b / pi) * F(1) = 2 b / pi
    assert z0_tm(au, b) == pytest.approx(2 * b / math.pi, rel=1e-14)
    assert z0_te(au, 1.0, B) == pytest.approx(2 / (math.pi * B), rel=1e-14)


def test_zero_frequency_forms_need_damping(au):
    with pytest.raises(ModelError):
        z0_tm(au.with_(hbar_gamma=0.0), 1e6)
    with pytest.raises(ModelError):
        z0_te(au.with_(v_tr=0.0), 1.0, 1e6)
    assert math.isinf(b_longitudinal(au.with_(v_l=0.0)))
