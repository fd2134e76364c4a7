import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonlocal_casimir.impedance import ModelError, b_longitudinal, b_transverse
from nonlocal_casimir.materials import MaterialSpec
from nonlocal_casimir.reflection import (
    Model,
    UserLocal,
    fresnel_pair,
    fresnel_zero,
    impedance_pair,
    nonlocal_zero_te,
    nonlocal_zero_tm,
    reflection_pair,
)


def test_closed_forms_at_characteristic_wavenumbers(au, ni):
    for m in (au, ni):
        assert nonlocal_zero_tm(m, b_longitudinal(m)) == pytest.approx((math.pi - 2) / (math.pi + 2), abs=1e-12)
        mu0 = m.mu_static
        expected = (2 * mu0 - math.pi) / (2 * mu0 + math.pi)
        assert nonlocal_zero_te(m, mu0, b_transverse(m, mu0)) == pytest.approx(expected, abs=1e-12)


def test_closed_forms_continuous_across_branch_point(au):
    b = b_longitudinal(au)
    B = b_transverse(au, 1.0)
    for f, scale in ((lambda k: nonlocal_zero_tm(au, k), b), (lambda k: nonlocal_zero_te(au, 1.0, k), B)):
        for d in (1e-9, 1e-7, 1e-6, 2e-6, 1e-5):
            lo, hi = f(scale * (1 - d)), f(scale * (1 + d))
            assert abs(hi - lo) < 1e-9 + 2 * d


def test_drude_limits_of_closed_forms(au):
    k = np.geomspace(1e4, 1e9, 9)
    np.testing.assert_array_equal(nonlocal_zero_tm(au.with_(v_l=0.0), k), 1.0)
    np.testing.assert_allclose(nonlocal_zero_te(au.with_(v_tr=0.0), 110.0, k), 109.0 / 111.0, rtol=1e-15)
    with pytest.raises(ModelError):
        nonlocal_zero_tm(au.with_(hbar_gamma=0.0), k)
    with pytest.raises(ModelError):
        nonlocal_zero_te(au.with_(hbar_gamma=0.0), 1.0, k)


@pytest.mark.parametrize("name", ["au", "ni"])
def test_zero_frequency_is_limit_of_nonzero_path(name, au, ni):
    m = {"au": au, "ni": ni}[name]
    k = np.array([1e5, 1e6, 1e7, 1e8])
    mu1 = m.with_(mu_static=1.0)
    r = reflection_pair(mu1, Model.NONLOCAL, 1, 1e-10, k_perp=k)
    np.testing.assert_allclose(r.r_tm, nonlocal_zero_tm(m, k), atol=1e-10)
    np.testing.assert_allclose(r.r_te, nonlocal_zero_te(m, 1.0, k), atol=1e-7)


def test_local_zero_frequency(ni):
    k = np.array([1e5, 1e7])
    d = fresnel_zero(ni, Model.DRUDE, k)
    np.testing.assert_array_equal(d.r_tm, 1.0)
    np.testing.assert_allclose(d.r_te, 109.0 / 111.0)
    p = fresnel_zero(ni, Model.PLASMA, k)
    kp = 4.89 / 1.973269804593e-7
    root = np.sqrt(k * k + 110.0 * kp * kp)
    np.testing.assert_allclose(p.r_te, (110.0 * k - root) / (110.0 * k + root), rtol=1e-14)


def test_nonmagnetic_drude_te_vanishes_at_zero_frequency(au):
    assert np.all(fresnel_zero(au, Model.DRUDE, [1e6]).r_te == 0.0)


def test_user_dielectric_zero_frequency():
    m = MaterialSpec("glass", 1.0, 0.0)
    model = UserLocal(lambda xi: 4.0 + 0 * xi, eps_static=4.0)
    r = fresnel_zero(m, model, [1e6])
    assert r.r_tm[0] == pytest.approx(0.6)
    assert r.r_te[0] == 0.0


@given(p=st.floats(0.0, 1e4), xi=st.floats(1e-3, 20.0), model=st.sampled_from(list(Model)))
def test_coefficients_bounded(p, xi, model):
    m = MaterialSpec("au", 9.0, 0.035, 2.67e6, 2.67e6)
    r = reflection_pair(m, model, 1, xi, p=p)
    assert 0.0 <= float(r.r_tm) <= 1.0
    assert -1.0 <= float(r.r_te) <= 0.0


@given(mu0=st.floats(1.0, 500.0), k=st.floats(1e3, 1e9))
def test_static_permeability_only_affects_te_at_zero_frequency(mu0, k):
    base = MaterialSpec("ni", 4.89, 0.0436, 1.97e6, 1.97e6)
    mag = base.with_(mu_static=mu0)
    for model in Model:
        r0, r1 = reflection_pair(base, model, 0, 0.0, k_perp=k), reflection_pair(mag, model, 0, 0.0, k_perp=k)
        assert r0.r_tm == r1.r_tm
        if mu0 > 1.0 + 1e-6:
            assert r0.r_te != r1.r_te
        s0 = reflection_pair(base, model, 1, 0.16, k_perp=k)
        s1 = reflection_pair(mag, model, 1, 0.16, k_perp=k)
        assert s0.r_tm == s1.r_tm and s0.r_te == s1.r_te


def test_impedance_route_equals_fresnel_for_local_models(au):
    p = np.array([0.0, 0.7, 12.0])
    for model in (Model.DRUDE, Model.PLASMA):
        a = impedance_pair(au, model, 0.3, p)
        b = fresnel_pair(au, model, 0.3, p)
        np.testing.assert_allclose(a.r_tm, b.r_tm, rtol=1e-13)
        np.testing.assert_allclose(a.r_te, b.r_te, rtol=1e-13, atol=1e-15)


def test_dispatch_arguments(au):
    with pytest.raises(ValueError):
        reflection_pair(au, Model.NONLOCAL, 0, 0.0)
    with pytest.raises(ValueError):
        reflection_pair(au, Model.NONLOCAL, 1, 0.2)
    r = reflection_pair(au, "plasma", 1, 0.2, k_perp=1e6)
    assert r.l == 1


def test_model_parse():
    assert Model.parse(" Drude ") is Model.DRUDE
    with pytest.raises(ValueError):
        Model.parse("hydrodynamic")
